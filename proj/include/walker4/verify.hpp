#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walker4/ruled.hpp"

namespace walker4 {

enum class Verdict { Match, Mismatch, BothDegenerate };

const char* to_string(Verdict v);

struct Tolerance {
  double abs = 1e-6;
  double rel = 1e-5;
};

/// Per-formula tolerance table (defaults abs 1e-6 / rel 1e-5); `scale` multiplies both.
Tolerance tolerance_for(std::string_view formula_id, double scale = 1.0);

struct FormulaRecord {
  std::string formula;
  DomainPoint point;
  double closed_value = 0;
  double oracle_value = 0;
  double abs_err = 0;
  double rel_err = 0;
  Verdict verdict = Verdict::Match;
  std::string note;
};

/// One disputed reading of a formula, decided against the oracle. `decisive` means
/// the two readings actually separate on this fixture and the oracle picked one.
struct Adjudication {
  std::string id;
  std::string implemented;
  std::string alternate;
  double implemented_value = 0;
  double alternate_value = 0;
  double oracle_value = 0;
  DomainPoint point;
  bool decisive = false;
  bool implemented_matches = false;
};

struct DiscrepancyReport {
  std::vector<FormulaRecord> records;
  std::vector<Adjudication> adjudications;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t degenerate = 0;

  bool all_match() const { return mismatches == 0; }
  void print(std::ostream& out) const;
};

struct VerifyOptions {
  double fd_step = 1e-4;
  double tol_scale = 1.0;
  bool inject_fault = false;  // test hook: perturbs one closed value before comparing
};

/// Compares every closed form against the generic pipeline at the given points and
/// decides the disputed readings. Deterministic for a fixed (fixture, points).
DiscrepancyReport verify_fixture(const RuledHypersurface& h,
                                 std::span<const DomainPoint> points,
                                 const VerifyOptions& opts = {});

/// Golden file line: `formula u1,u2,u3 v1[,v2,...] tol`.
struct GoldenEntry {
  std::string formula;
  DomainPoint point;
  std::vector<double> values;
  double tol = 0;
};

/// Writes the oracle values as golden data. Refuses (throws) if verify_fixture
/// reports any mismatch; throws ArgumentError for an empty point list.
void pin_golden(const RuledHypersurface& h, std::span<const DomainPoint> points,
                std::ostream& out, const VerifyOptions& opts = {});

std::vector<GoldenEntry> load_golden(std::istream& in);

}  // namespace walker4
