#include "doctest.h"
#include "gsmids/scenario.hpp"

using namespace gsmids;

TEST_CASE("tokenizer handles quotes, escapes and comments") {
  auto t = tokenize_line(R"(expect sms +1 "a b\n\"c\"\x1a" by 5 # trailing)", 1);
  REQUIRE(t.size() == 6);
  CHECK(t[3] == Token{"a b\n\"c\"\x1a", true});
  CHECK(t[5] == Token{"5", false});
  CHECK(tokenize_line("   # only a comment", 1).empty());
  CHECK_THROWS_AS(tokenize_line(R"(x "open)", 3), ParseError);
  CHECK_THROWS_AS(tokenize_line(R"(x "\q")", 3), ParseError);
  CHECK_THROWS_AS(tokenize_line(R"(x "\x4")", 3), ParseError);
  CHECK_THROWS_AS(tokenize_line(R"(x "a"b)", 3), ParseError);
}

TEST_CASE("scenario grammar: every statement") {
  const auto sc = parse_scenario(R"(# door test
at 20000 door open
at 25000 door close
at 1000 intruder set 3 -0.5
at 2000 intruder clear
at 16000 sound 900 600
at 30000 call answer
at 31000 call reject
at 32000 call remote_hangup

expect call +2347048850497 by 25000
expect sms +2347048850497 "ALERT!!\n Intruder detected!!!" by 28500
expect quiet until 15000
expect indicator 1 by 20000
)");
  REQUIRE(sc.events.size() == 8);
  CHECK(sc.events[0] == ScenarioEvent{SimTime{1000}, stimulus::IntruderSet{{3.0, -0.5}}});
  CHECK(sc.events[1] == ScenarioEvent{SimTime{2000}, stimulus::IntruderClear{}});
  CHECK(sc.events[2] == ScenarioEvent{SimTime{16000}, stimulus::Sound{900, 600}});
  CHECK(sc.events[3] == ScenarioEvent{SimTime{20000}, stimulus::Door{DoorState::Open}});
  CHECK(sc.events[4] == ScenarioEvent{SimTime{25000}, stimulus::Door{DoorState::Closed}});
  CHECK(sc.events[7] == ScenarioEvent{SimTime{32000}, stimulus::Call{CallDirective::RemoteHangup}});
  REQUIRE(sc.expectations.size() == 4);
  CHECK(sc.expectations[0] == Expectation{expect::Call{"+2347048850497", SimTime{25000}}});
  CHECK(sc.expectations[1] ==
        Expectation{expect::Sms{"+2347048850497", "ALERT!!\n Intruder detected!!!", SimTime{28500}}});
  CHECK(sc.expectations[2] == Expectation{expect::Quiet{SimTime{15000}}});
  CHECK(sc.expectations[3] == Expectation{expect::Indicator{1, SimTime{20000}}});
}

TEST_CASE("events at equal times keep file order") {
  const auto sc = parse_scenario("at 5 door open\nat 1 door close\nat 5 door close\n");
  REQUIRE(sc.events.size() == 3);
  CHECK(sc.events[1] == ScenarioEvent{SimTime{5}, stimulus::Door{DoorState::Open}});
  CHECK(sc.events[2] == ScenarioEvent{SimTime{5}, stimulus::Door{DoorState::Closed}});
}

TEST_CASE("scenario errors carry line and token") {
  auto expect_error = [](const char* text, int line, const char* token) {
    CAPTURE(text);
    try {
      parse_scenario(text);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.token() == token);
    }
  };
  expect_error("at 20000 door ajar", 1, "ajar");
  expect_error("\n\nwait 5", 3, "wait");
  expect_error("at -1 door open", 1, "-1");
  expect_error("at 10 door open now", 1, "now");
  expect_error("at 10 smoke 5", 1, "smoke");
  expect_error("expect sms +1 ALERT by 5", 1, "ALERT");
  expect_error("expect call +1 before 5", 1, "before");
  expect_error("expect nothing", 1, "nothing");
  expect_error("at 10 intruder set 1 nan", 1, "nan");
  expect_error("at 10 sound 900", 1, "");
  expect_error("at 99999999999999 door open", 1, "99999999999999");
}

TEST_CASE("describe round-trips through the grammar") {
  const auto sc = parse_scenario(
      "at 1 intruder set 1.928362829 2.298133329\nat 2 sound 900 600\nat 3 call remote_hangup\n");
  for (const auto& ev : sc.events) {
    const auto again = parse_scenario("at " + std::to_string(ev.at.t_ms) + " " + describe(ev.kind));
    REQUIRE(again.events.size() == 1);
    CHECK(again.events[0] == ev);
  }
}

TEST_CASE("empty config gives defaults") {
  const auto cfg = parse_config("");
  CHECK(cfg.firmware.sound_threshold == 800);
  CHECK(cfg.firmware.owner_number == "+2347048850497");
  CHECK(cfg.firmware.sms_text == "ALERT!!\n Intruder detected!!!");
  CHECK(cfg.firmware.boot_delay_ms == 15000);
  CHECK(cfg.pir.half_angle_deg == 45.0);
  CHECK(cfg.pir.range_m == doctest::Approx(6.1));
  CHECK(cfg.pir_hold_ms == 2000);
  CHECK(cfg.baud == 9600);
}

TEST_CASE("config keys") {
  const auto cfg = parse_config(R"(
# comment
owner_number = +15551234567
sound_threshold=700
sound_policy = indicator_dial
sms_text = "Door open\r\nCheck now"
pir_facing_deg = 90
pir_range_m = 4.5
modem_echo = true
baud = 19200
)");
  CHECK(cfg.firmware.owner_number == "+15551234567");
  CHECK(cfg.firmware.sound_threshold == 700);
  CHECK(cfg.firmware.sound_policy == AlertPolicy::IndicatorDial);
  CHECK(cfg.firmware.sms_text == "Door open\r\nCheck now");
  CHECK(cfg.pir.facing_deg == 90.0);
  CHECK(cfg.pir.range_m == 4.5);
  CHECK(cfg.modem_echo);
  CHECK(cfg.baud == 19200);
}

TEST_CASE("config errors name key and line") {
  auto expect_error = [](const char* text, int line, const char* key) {
    CAPTURE(text);
    try {
      parse_config(text);
      FAIL("no error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(e.key() == key);
    }
  };
  expect_error("sound_threshold = 2000", 1, "sound_threshold");
  expect_error("\ncolour = red", 2, "colour");
  expect_error("owner_number = 12ab", 1, "owner_number");
  expect_error("sms_text = \"a\\x1Ab\"", 1, "sms_text");
  expect_error("boot_delay_ms = 0", 1, "boot_delay_ms");
  expect_error("pir_half_angle_deg = 180", 1, "pir_half_angle_deg");
  expect_error("sound_policy = loud", 1, "sound_policy");
  expect_error("sound_threshold 5", 1, "sound_threshold");
  expect_error("sms_text = two words", 1, "sms_text");
  expect_error("baud = 9600\nbaud = 4800", 2, "baud");
}
