#include "ak/holder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ak/parallel.hpp"

namespace ak {

namespace {

constexpr double kCaseTolerance = 1e-12;

void require_exponent(double v, const char* what) {
  if (!(v > 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in (0,1], got " << v;
    throw std::invalid_argument(os.str());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

Modulus Modulus::power(double alpha) {
  require_exponent(alpha, "power modulus exponent");
  Modulus m;
  m.kind_ = Kind::power;
  m.a_ = alpha;
  return m;
}

Modulus Modulus::log_power(double theta) {
  require_exponent(theta, "log-power modulus exponent");
  Modulus m;
  m.kind_ = Kind::log_power;
  m.a_ = theta;
  return m;
}

Modulus Modulus::max_of(Modulus a, Modulus b) {
  Modulus m;
  m.kind_ = Kind::max_of;
  m.lhs_ = std::make_shared<const Modulus>(std::move(a));
  m.rhs_ = std::make_shared<const Modulus>(std::move(b));
  return m;
}

Modulus Modulus::min_exp(double alpha, double gamma) {
  if (!(alpha > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("min-exponent modulus needs positive exponents");
  }
  require_exponent(std::min(alpha, gamma), "min-exponent modulus exponent");
  Modulus m;
  m.kind_ = Kind::min_exp;
  m.a_ = alpha;
  m.b_ = gamma;
  return m;
}

double Modulus::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::power:
      return std::pow(r, a_);
    case Kind::min_exp:
      return std::pow(r, std::min(a_, b_));
    case Kind::log_power: {
      const double r_theta = std::exp(-1.0 / a_);
      if (r > r_theta) return std::pow(r_theta, a_) * std::abs(std::log(r_theta));
      return std::pow(r, a_) * std::abs(std::log(r));
    }
    case Kind::max_of:
      return std::max((*lhs_)(r), (*rhs_)(r));
  }
  return 0.0;
}

double Modulus::exponent() const {
  switch (kind_) {
    case Kind::power:
    case Kind::log_power:
      return a_;
    case Kind::min_exp:
      return std::min(a_, b_);
    case Kind::max_of:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string Modulus::describe() const {
  switch (kind_) {
    case Kind::power:
      return "r^" + fmt(a_);
    case Kind::log_power:
      return "omega_" + fmt(a_);
    case Kind::min_exp:
      return "r^min{" + fmt(a_) + "," + fmt(b_) + "}";
    case Kind::max_of:
      return "max{" + lhs_->describe() + "," + rhs_->describe() + "}";
  }
  return {};
}

SampledFunction::SampledFunction(std::size_t space_size, std::vector<Index> domain,
                                 std::vector<Complex> values)
    : domain_(std::move(domain)), values_(std::move(values)), slot_(space_size, -1) {
  if (domain_.size() != values_.size()) {
    throw std::invalid_argument("sampled function: domain and values differ in length");
  }
  for (std::size_t k = 0; k < domain_.size(); ++k) {
    const Index i = domain_[k];
    if (i >= space_size) throw std::invalid_argument("sampled function: domain index out of range");
    if (slot_[i] >= 0) throw std::invalid_argument("sampled function: repeated domain index");
    slot_[i] = static_cast<std::ptrdiff_t>(k);
  }
}

Complex SampledFunction::at(Index i) const {
  if (!defined_at(i)) {
    throw std::out_of_range("sampled function undefined at point " + std::to_string(i));
  }
  return values_[static_cast<std::size_t>(slot_[i])];
}

double SampledFunction::sup_abs() const {
  double s = 0.0;
  for (const auto& v : values_) s = std::max(s, std::abs(v));
  return s;
}

SampledFunction SampledFunction::axpy(Complex alpha, const SampledFunction& other) const {
  if (other.domain_ != domain_ || other.slot_.size() != slot_.size()) {
    throw std::invalid_argument("axpy needs identical domains");
  }
  SampledFunction out = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    out.values_[k] = alpha * values_[k] + other.values_[k];
  }
  return out;
}

SampledFunction SampledFunction::scaled(Complex alpha) const {
  SampledFunction out = *this;
  for (auto& v : out.values_) v *= alpha;
  return out;
}

ModulusTable::ModulusTable(const DiscreteSpace& space, std::span<const Index> domain,
                           const Modulus& m)
    : domain_(domain.begin(), domain.end()) {
  const std::size_t n = domain_.size();
  table_.resize(n < 2 ? 0 : n * (n - 1) / 2);
  parallel_for(n, [&](std::size_t a) {
    double* row = table_.data() + offset(a);
    for (std::size_t b = a + 1; b < n; ++b) {
      row[b - a - 1] = m(space.distance(domain_[a], domain_[b]));
    }
  });
}

namespace {

struct PairBest {
  double value = 0.0;
  std::size_t a = 0, b = 0;
};

SeminormEstimate scan_pairs(std::span<const Index> domain, const std::vector<Complex>& vals,
                            const std::function<double(std::size_t, std::size_t)>& omega) {
  SeminormEstimate est;
  const std::size_t n = domain.size();
  if (n < 2) {
    est.degenerate = true;
    return est;
  }
  std::vector<PairBest> rows(n);
  parallel_for(n, [&](std::size_t a) {
    PairBest best;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double diff = std::abs(vals[a] - vals[b]);
      const double w = omega(a, b);
      double q;
      if (w > 0.0) {
        q = diff / w;
      } else {
        q = diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      }
      if (q > best.value) best = {q, a, b};
    }
    rows[a] = best;
  });
  PairBest best;
  for (const auto& r : rows) {
    if (r.value > best.value) best = r;
  }
  est.value = best.value;
  est.argmax_first = domain[best.a];
  est.argmax_second = domain[best.b];
  return est;
}

}  // namespace

SeminormEstimate holder_seminorm(const SampledFunction& f, const Modulus& m,
                                 const DiscreteSpace& space) {
  const auto dom = f.domain();
  std::vector<Complex> vals(f.values().begin(), f.values().end());
  return scan_pairs(dom, vals, [&](std::size_t a, std::size_t b) {
    return m(space.distance(dom[a], dom[b]));
  });
}

SeminormEstimate holder_seminorm(const SampledFunction& f, const ModulusTable& table) {
  const auto dom = table.domain();
  std::vector<Complex> vals;
  vals.reserve(dom.size());
  for (Index i : dom) vals.push_back(f.at(i));
  return scan_pairs(dom, vals, [&](std::size_t a, std::size_t b) { return table.at(a, b); });
}

double holder_norm_b(const SampledFunction& f, const Modulus& m, const DiscreteSpace& space) {
  return f.sup_abs() + holder_seminorm(f, m, space).value;
}

double holder_norm_b(const SampledFunction& f, const ModulusTable& table) {
  double sup = 0.0;
  for (Index i : table.domain()) sup = std::max(sup, std::abs(f.at(i)));
  return sup + holder_seminorm(f, table).value;
}

std::string to_string(HolderCase c) {
  switch (c) {
    case HolderCase::b:
      return "b";
    case HolderCase::bb:
      return "bb";
    case HolderCase::bbb:
      return "bbb";
  }
  return {};
}

HolderCase classify_case(double beta, double upsilon, double s2, double s3) {
  require_exponent(beta, "beta");
  require_exponent(s3, "s3");
  if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be > 0");
  if (!(s2 >= beta)) throw std::invalid_argument("violated s2 >= beta");
  const double gap = (s2 - beta) - upsilon;
  if (std::abs(gap) <= kCaseTolerance) return HolderCase::bb;
  if (gap < 0.0) return HolderCase::bbb;
  if (!(s2 < upsilon + beta + s3)) {
    throw std::invalid_argument("violated s2 < upsilon + beta + s3 (case b)");
  }
  return HolderCase::b;
}

Modulus target_modulus_for_case(double beta, double upsilon, double s2, double s3) {
  switch (classify_case(beta, upsilon, s2, s3)) {
    case HolderCase::b:
      return Modulus::min_exp(beta, upsilon + s3 + beta - s2);
    case HolderCase::bb:
      return Modulus::max_of(Modulus::power(beta), Modulus::log_power(s3));
    case HolderCase::bbb:
      return Modulus::min_exp(beta, s3);
  }
  throw std::logic_error("unreachable");
}

}  // namespace ak
