#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "gsmids/sim_kernel.hpp"

using gsmids::EventQueue;
using gsmids::SerialChannel;
using gsmids::SimTime;

namespace {

// Frame time of one 8N1 byte in microseconds, floored to whole ms. Kept
// apart from per_byte_latency_for so the two can disagree.
gsmids::Millis frame_ms_by_hand(std::uint32_t baud) {
  const double frame_us = 10.0 * 1'000'000.0 / baud;
  return static_cast<gsmids::Millis>(frame_us / 1000.0);
}

}  // namespace

TEST_CASE("schedule fires when the clock reaches the event") {
  EventQueue<int> q;
  q.schedule(SimTime{500}, 1);
  CHECK(q.advance_to(SimTime{499}).empty());
  auto fired = q.advance_to(SimTime{500});
  REQUIRE(fired.size() == 1);
  CHECK(fired[0].payload == 1);
  CHECK(q.now() == SimTime{500});
}

TEST_CASE("same-time events fire in insertion order") {
  EventQueue<char> q;
  q.schedule(SimTime{500}, 'a');
  q.schedule(SimTime{500}, 'b');
  q.schedule(SimTime{100}, 'z');
  auto fired = q.advance_to(SimTime{1000});
  std::string order;
  for (auto& e : fired) order.push_back(e.payload);
  CHECK(order == "zab");
}

TEST_CASE("scheduling in the past is rejected") {
  EventQueue<int> q;
  q.advance_to(SimTime{200});
  CHECK_THROWS_AS(q.schedule(SimTime{100}, 0), gsmids::SchedulingError);
  CHECK_THROWS_AS(q.advance_to(SimTime{199}), gsmids::SchedulingError);
  CHECK_NOTHROW(q.schedule(SimTime{200}, 0));
}

TEST_CASE("advancing an empty queue only moves the clock") {
  EventQueue<int> q;
  CHECK(q.advance_to(SimTime{10'000}).empty());
  CHECK(q.now() == SimTime{10'000});
}

TEST_CASE("cancelled events never fire") {
  EventQueue<int> q;
  auto h = q.schedule(SimTime{10}, 1);
  q.schedule(SimTime{10}, 2);
  CHECK(q.cancel(h));
  CHECK_FALSE(q.cancel(h));
  auto fired = q.advance_to(SimTime{10});
  REQUIRE(fired.size() == 1);
  CHECK(fired[0].payload == 2);
}

TEST_CASE("handlers may schedule follow-ups that fire in the same advance") {
  EventQueue<int> q;
  q.schedule(SimTime{5}, 0);
  std::vector<std::pair<gsmids::Millis, int>> seen;
  q.advance_to(SimTime{20}, [&](const auto& ev) {
    seen.emplace_back(q.now().t_ms, ev.payload);
    if (ev.payload < 3) q.schedule(q.now() + 5, ev.payload + 1);
  });
  CHECK(seen == std::vector<std::pair<gsmids::Millis, int>>{{5, 0}, {10, 1}, {15, 2}, {20, 3}});
}

TEST_CASE("fired order is sorted by (fire_at, seq) and reproducible for random schedules") {
  auto run_once = [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EventQueue<int> q;
    std::vector<std::pair<gsmids::Millis, std::uint64_t>> keys;
    int id = 0;
    for (int step = 0; step < 50; ++step) {
      const int n = static_cast<int>(rng() % 5);
      for (int i = 0; i < n; ++i) {
        q.schedule(q.now() + static_cast<gsmids::Millis>(rng() % 40), id++);
      }
      for (auto& e : q.advance_to(q.now() + static_cast<gsmids::Millis>(rng() % 30))) {
        keys.emplace_back(e.fire_at.t_ms, e.seq);
      }
    }
    return keys;
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto keys = run_once(seed);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys == run_once(seed));
  }
}

TEST_CASE("per-byte latency is the floored 8N1 frame time") {
  CHECK(gsmids::per_byte_latency_for(9600) == 1);
  for (std::uint32_t baud : {300u, 1200u, 2400u, 4800u, 9600u, 19200u, 115200u}) {
    CHECK(gsmids::per_byte_latency_for(baud) == frame_ms_by_hand(baud));
  }
  CHECK_THROWS(gsmids::per_byte_latency_for(0));
}

TEST_CASE("a burst's k-th byte is deliverable at t + (k+1) * latency") {
  SerialChannel ch(9600);
  ch.send("HELLO", SimTime{0});
  CHECK(ch.next_delivery() == SimTime{1});
  CHECK(ch.drain(SimTime{0}).empty());
  CHECK(ch.drain(SimTime{3}) == "HEL");
  CHECK(ch.drain(SimTime{3}).empty());
  CHECK(ch.drain(SimTime{5}) == "LO");
  CHECK(ch.empty());
}

TEST_CASE("slower baud stretches the burst") {
  SerialChannel ch(1200);  // 8 ms per byte
  ch.send("ab", SimTime{100});
  CHECK(ch.drain(SimTime{115}) == "a");
  CHECK(ch.drain(SimTime{116}) == "b");
}

TEST_CASE("empty send leaves the channel unchanged") {
  SerialChannel ch;
  ch.send("", SimTime{0});
  CHECK(ch.empty());
  CHECK_FALSE(ch.next_delivery().has_value());
}

TEST_CASE("back-to-back bursts queue behind each other") {
  SerialChannel ch;
  ch.send("abc", SimTime{0});
  ch.send("de", SimTime{1});
  CHECK(ch.delivery_times() ==
        std::vector<SimTime>{SimTime{1}, SimTime{2}, SimTime{3}, SimTime{4}, SimTime{5}});
  CHECK(ch.drain(SimTime{100}) == "abcde");
}

TEST_CASE("interleaved drains neither reorder nor duplicate bytes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    SerialChannel ch;
    std::string sent;
    std::string got;
    gsmids::Millis now = 0;
    for (int step = 0; step < 20; ++step) {
      if (rng() % 2) {
        std::string burst(rng() % 8, '\0');
        for (auto& c : burst) c = static_cast<char>(rng() % 256);
        ch.send(burst, SimTime{now});
        sent += burst;
      }
      now += static_cast<gsmids::Millis>(rng() % 6);
      got += ch.drain(SimTime{now});
    }
    got += ch.drain(SimTime{now + 1000});
    CHECK(got == sent);
  }
}
