#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spm/error.hpp"
#include "spm/profile.hpp"

using namespace spm;

TEST_CASE("two-row file is a pulse followed by the end stamp") {
  const auto p = parse_profile("time_s,current_A\n0,1\n10,0\n");
  CHECK(p.duration() == 10.0);
  CHECK(p.at(0.0) == 1.0);
  CHECK(p.at(9.99) == 1.0);
  CHECK(p.at(10.0) == 0.0);
  CHECK(net_charge(p) == 10.0);
}

TEST_CASE("bad profiles") {
  auto code = [](const char* text) {
    try {
      parse_profile(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code("time_s,current_A\n0,1\n0,2\n") == ErrorCode::NonMonotoneTime);
  CHECK(code("time_s,current_A\n0,1\n5,2\n4,0\n") == ErrorCode::NonMonotoneTime);
  CHECK(code("t,i\n0,1\n1,0\n") == ErrorCode::ParseError);
  CHECK(code("time_s,current_A\n0,1\n1,x\n") == ErrorCode::ParseError);
  CHECK(code("time_s,current_A\n0,1\n") == ErrorCode::InvalidArgument);
  CHECK_THROWS_AS(load_profile("/nonexistent/profile.csv"), Error);
}

TEST_CASE("1 Hz drive-cycle-like file keeps every row as a breakpoint") {
  std::ostringstream text;
  text << "time_s,current_A\n";
  for (int k = 0; k < 1400; ++k) text << k << ',' << 3.0 * std::sin(0.01 * k) << '\n';
  const auto p = parse_profile(text.str());
  CHECK(p.size() == 1400);
  CHECK(p.as_input().times.size() == 1400);
}

TEST_CASE("save then load round-trips exactly") {
  const auto p = zero_mean_random(600.0, 7.0, 2.0, 99);
  const auto path = std::filesystem::temp_directory_path() / "spm_test_profile.csv";
  {
    std::ofstream out(path);
    write_profile(out, p);
  }
  CHECK(load_profile(path) == p);
  std::filesystem::remove(path);
}

TEST_CASE("HPPC synthesis") {
  const auto one = synth_hppc(1.0, 10.0, 50.0, 1, {1});
  CHECK(net_charge(one) == doctest::Approx(10.0));
  CHECK(one.duration() == 60.0);

  const auto balanced = synth_hppc(2.0, 30.0, 60.0, 6);
  CHECK(net_charge(balanced) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(balanced.duration() == doctest::Approx(6 * (30.0 + 60.0)));
  int pulses = 0;
  for (double i : balanced.currents()) pulses += i != 0.0;
  CHECK(pulses == 6);
  CHECK(balanced.at(0.0) == 2.0);
  CHECK(balanced.at(90.0) == -2.0);

  CHECK_THROWS_AS(synth_hppc(1.0, 0.0, 1.0, 1), Error);
  CHECK_THROWS_AS(synth_hppc(1.0, 1.0, 1.0, 0), Error);
}

TEST_CASE("net charge") {
  CHECK(net_charge(constant_current(0.0, 100.0)) == 0.0);
  CHECK(net_charge(constant_current(1.0, 3600.0)) == doctest::Approx(3600.0));
  CHECK(std::abs(net_charge(zero_mean_random(3600.0, 10.0, 5.0, 1))) < 1e-9);
}

TEST_CASE("net charge is additive over concatenation") {
  const auto a = synth_hppc(3.0, 10.0, 20.0, 3, {1});
  const auto b = zero_mean_random(300.0, 9.0, 1.0, 4);
  const auto c = constant_current(-2.0, 50.0);
  CHECK(net_charge(a.concatenated(b)) == doctest::Approx(net_charge(a) + net_charge(b)));
  CHECK(net_charge(a.concatenated(c)) == doctest::Approx(net_charge(a) + net_charge(c)));
  CHECK(a.concatenated(c).duration() == doctest::Approx(a.duration() + c.duration()));
}

TEST_CASE("resampling keeps the held current and the charge") {
  const auto p = synth_hppc(2.0, 10.0, 25.0, 4);
  const auto r = p.resampled(3.0);
  CHECK(net_charge(r) == doctest::Approx(net_charge(p)).epsilon(1e-12));
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    CHECK(r.times()[k + 1] - r.times()[k] <= 3.0 + 1e-12);
    CHECK(r.currents()[k] == p.at(r.times()[k]));
  }
  for (double t : p.times()) CHECK(std::find(r.times().begin(), r.times().end(), t) != r.times().end());
}

TEST_CASE("random profile is reproducible from its seed") {
  CHECK(zero_mean_random(100.0, 1.0, 1.0, 5) == zero_mean_random(100.0, 1.0, 1.0, 5));
  CHECK_FALSE(zero_mean_random(100.0, 1.0, 1.0, 5) == zero_mean_random(100.0, 1.0, 1.0, 6));
}
