#include "walker4/curve.hpp"
#include "walker4/field.hpp"

#include <cmath>

namespace walker4 {

namespace {
constexpr std::string_view kFieldVars[] = {"u3", "u4"};
constexpr std::string_view kCurveVars[] = {"t"};
}  // namespace

ScalarField2::ScalarField2(Expr f, std::string source)
    : f_(std::move(f)), source_(std::move(source)) {
  f3_ = f_.derivative(0);
  f4_ = f_.derivative(1);
  f33_ = f3_.derivative(0);
  f34_ = f3_.derivative(1);
  f44_ = f4_.derivative(1);
}

ScalarField2 ScalarField2::parse(std::string_view text) {
  return ScalarField2(Expr::parse(text, kFieldVars), std::string(text));
}

ScalarField2 ScalarField2::constant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return ScalarField2(Expr::constant(value), buf);
}

ScalarField2::Partials ScalarField2::eval(double u3, double u4) const {
  const double vals[2] = {u3, u4};
  Partials p;
  p.f = f_.eval(vals);
  p.f3 = f3_.eval(vals);
  p.f4 = f4_.eval(vals);
  p.f33 = f33_.eval(vals);
  p.f34 = f34_.eval(vals);
  p.f44 = f44_.eval(vals);
  return p;
}

double ScalarField2::value(double u3, double u4) const {
  const double vals[2] = {u3, u4};
  return f_.eval(vals);
}

bool ScalarField2::is_constant() const {
  return f3_.is_constant_zero() && f4_.is_constant_zero();
}

CurveJet::CurveJet(std::array<Expr, 4> comps, std::array<std::string, 4> sources)
    : c_(std::move(comps)), sources_(std::move(sources)) {
  for (int i = 0; i < 4; ++i) {
    d1_[i] = c_[i].derivative(0);
    d2_[i] = d1_[i].derivative(0);
    d3_[i] = d2_[i].derivative(0);
  }
}

CurveJet CurveJet::parse(std::string_view text) {
  std::array<std::string, 4> parts;
  int depth = 0, idx = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char ch = i < text.size() ? text[i] : ',';
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    else if (ch == ',' && depth == 0) {
      if (idx >= 4) throw ParseError("curve needs exactly four components", i);
      parts[idx++] = std::string(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (idx != 4) throw ParseError("curve needs exactly four components", text.size());
  return parse(parts);
}

CurveJet CurveJet::parse(const std::array<std::string, 4>& components) {
  std::array<Expr, 4> exprs;
  for (int i = 0; i < 4; ++i) exprs[i] = Expr::parse(components[i], kCurveVars);
  return CurveJet(std::move(exprs), components);
}

CurveJet::Jet CurveJet::jet(double t) const {
  const double vals[1] = {t};
  Jet j;
  for (int i = 0; i < 4; ++i) {
    j.p[i] = c_[i].eval(vals);
    j.d1[i] = d1_[i].eval(vals);
    j.d2[i] = d2_[i].eval(vals);
    j.d3[i] = d3_[i].eval(vals);
  }
  return j;
}

std::vector<Vec4> CurveJet::eval_jet(double t, int order) const {
  if (order < 0 || order > 3) throw ArgumentError("jet order must be in 0..3");
  const Jet j = jet(t);
  std::vector<Vec4> out;
  out.push_back(j.p);
  if (order >= 1) out.push_back(j.d1);
  if (order >= 2) out.push_back(j.d2);
  if (order >= 3) out.push_back(j.d3);
  return out;
}

}  // namespace walker4
