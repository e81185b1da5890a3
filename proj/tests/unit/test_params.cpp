#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "spm/error.hpp"
#include "spm/params.hpp"

using namespace spm;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_parameters(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto at = text.find(key + " = ");
  REQUIRE(at != std::string::npos);
  const auto eol = text.find('\n', at);
  return text.replace(at, eol - at, line);
}

std::string table_text() { return format_parameters(lg_m50t_fvm()); }

}  // namespace

TEST_CASE("FVM parameter file loads with published values") {
  const auto p = load_parameters(SPM_DATA_DIR "/lg_m50t_fvm.params");
  CHECK(p.n.R_s == doctest::Approx(10.70e-6).epsilon(1e-14));
  CHECK(p.n.D_s == doctest::Approx(0.17e-12).epsilon(1e-14));
  CHECK(p.A_cell == doctest::Approx(0.11267).epsilon(1e-14));
  CHECK(p.R_l == doctest::Approx(0.029).epsilon(1e-14));
  CHECK(p.p.theta_0 == 0.8536);
}

TEST_CASE("CVM parameter file loads with k0 converted from mmol") {
  const auto p = load_parameters(SPM_DATA_DIR "/lg_m50t_cvm.params");
  CHECK(p.n.k0 == doctest::Approx(3.06e-6).epsilon(1e-14));
  CHECK(p.p.R_s == doctest::Approx(6.31e-6).epsilon(1e-14));
}

TEST_CASE("bundled files agree with the built-in sets") {
  const auto a = load_parameters(SPM_DATA_DIR "/lg_m50t_cvm.params");
  const auto b = lg_m50t_cvm();
  CHECK(a.n.D_s == doctest::Approx(b.n.D_s).epsilon(1e-14));
  CHECK(a.p.k0 == doctest::Approx(b.p.k0).epsilon(1e-14));
  CHECK(a.n.L == doctest::Approx(b.n.L).epsilon(1e-14));
}

TEST_CASE("invalid parameter files are rejected with a specific code") {
  const auto base = table_text();
  CHECK(code_of(replace_line(base, "eps_n", "eps_n = 1.3")) == ErrorCode::StoichiometryOrderViolation);
  CHECK(code_of(replace_line(base, "D_s_p", "D_s_p = -1 m^2/s")) == ErrorCode::NonPositiveValue);
  CHECK(code_of(replace_line(base, "theta_n_0", "theta_n_0 = 0.95")) == ErrorCode::StoichiometryOrderViolation);
  CHECK(code_of(replace_line(base, "theta_p_100", "theta_p_100 = 0.9")) == ErrorCode::StoichiometryOrderViolation);
  CHECK(code_of(replace_line(base, "R_l", "# R_l removed")) == ErrorCode::MissingKey);
  CHECK(code_of(replace_line(base, "R_s_n", "R_s_n = 10 furlongs")) == ErrorCode::UnknownUnit);
  CHECK(code_of(replace_line(base, "R_s_n", "R_s_n = 10 mol/m^3")) == ErrorCode::UnknownUnit);
  CHECK(code_of(base + "bogus = 1\n") == ErrorCode::ParseError);
  CHECK(code_of(base + "R_l = 1 Ohm\n") == ErrorCode::ParseError);
  CHECK(code_of(replace_line(base, "R_l", "R_l 0.029")) == ErrorCode::ParseError);
  CHECK(code_of(replace_line(base, "R_l", "R_l = abc")) == ErrorCode::ParseError);
}

TEST_CASE("load reports a missing file") {
  CHECK_THROWS_AS(load_parameters("/nonexistent/cell.params"), Error);
}

TEST_CASE("serialize then parse round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int draw = 0; draw < 100; ++draw) {
    auto p = lg_m50t_fvm();
    p.n.R_s *= u(rng);
    p.p.D_s *= u(rng);
    p.n.k0 *= u(rng);
    p.R_l *= u(rng);
    p.T *= u(rng);
    const auto q = parse_parameters(format_parameters(p));
    CHECK(format_parameters(q) == format_parameters(p));
    CHECK(q.n.R_s == p.n.R_s);
    CHECK(q.p.D_s == p.p.D_s);
    CHECK(q.T == p.T);
  }
}

TEST_CASE("specific area") {
  CHECK(specific_area(lg_m50t_fvm(), Electrode::negative) == doctest::Approx(2.131e5).epsilon(1e-3));
  CHECK(specific_area(lg_m50t_cvm(), Electrode::positive) == doctest::Approx(3.661e5).epsilon(1e-3));

  auto unit = lg_m50t_fvm();
  unit.n.eps = 0.5;
  unit.n.R_s = 1.0;
  CHECK(specific_area(unit, Electrode::negative) == doctest::Approx(1.5));

  // a_s R is independent of R for fixed eps.
  const double ref = specific_area(unit, Electrode::negative) * unit.n.R_s;
  for (double r : {1e-7, 3e-6, 12e-6, 2.0}) {
    unit.n.R_s = r;
    CHECK(specific_area(unit, Electrode::negative) * r == doctest::Approx(ref).epsilon(1e-15));
  }
}

TEST_CASE("capacity and thermal voltage") {
  const auto p = lg_m50t_fvm();
  // eps A L F c_max |dtheta|, written out.
  const double q_n = 0.76 * 0.11267 * 85.2e-6 * 96485.33212 * 29583.0 * (0.9343 - 0.0204);
  CHECK(electrode_capacity(p, Electrode::negative) == doctest::Approx(q_n).epsilon(1e-12));
  CHECK(one_c_current(p) <= electrode_capacity(p, Electrode::positive) / 3600.0);
  CHECK(p.thermal_voltage() == doctest::Approx(0.025693).epsilon(1e-4));
}

TEST_CASE("sign convention") {
  CHECK(current_sign(Electrode::negative) == 1.0);
  CHECK(current_sign(Electrode::positive) == -1.0);
  CHECK(suffix(Electrode::negative) == "n");
}
