#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collig/scalar.hpp"

namespace collig {

// Knobs shared by the verification suites and the command line front end.
// max_word_len < 0 means "per-shape default" (see fingerprint).
struct RunConfig {
  Mode mode = Mode::exact;
  std::uint64_t seed = 12345;
  double tol = 1e-9;
  int trials = 20;
  int max_word_len = -1;
  int det_cap = 12;
};

struct CaseResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "inconclusive"
  std::optional<double> residual;
  std::string details;
};

struct Report {
  std::string suite;
  Mode mode = Mode::exact;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  int passed() const { return count("pass"); }
  int failed() const { return count("fail"); }
  int inconclusive() const { return count("inconclusive"); }
  bool ok() const { return failed() == 0; }

 private:
  int count(const char* status) const {
    int n = 0;
    for (const auto& c : cases) n += c.status == status;
    return n;
  }
};

// Each suite checks one family of identities at the scale given by the
// config. Cases are named with zero-padded indexes so reports sort stably.
//
//   multiplicativity  chi_{g o h}(S) = chi_g(S) chi_h(S), both modes
//   unitarity         norm bounds and boundary unitarity, float only
//   divisor           p additivity, embedding factor, delta shift, m = 1
//                     reduced denominators and the cocycle, exact only
//   relations         amplified chi: block splitting, conjugator
//                     equivariance, p invariance, both modes
//   reconstruction    trace words and pairings recovered from divisor /
//                     characteristic data, both modes
//   separation        oracle verdict vs fingerprint equality on random and
//                     deliberately conjugate pairs, exact only
Report run_multiplicativity(const RunConfig& cfg);
Report run_unitarity(const RunConfig& cfg);
Report run_divisor(const RunConfig& cfg);
Report run_relations(const RunConfig& cfg);
Report run_reconstruction(const RunConfig& cfg);
Report run_separation(const RunConfig& cfg);

// Dispatch by suite name; "all" runs every suite in its natural mode(s),
// ignoring cfg.mode. Unknown names raise InputError.
std::vector<Report> run_suites(const std::string& suite, const RunConfig& cfg);

}  // namespace collig
