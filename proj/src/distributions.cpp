#include "mfgf/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mfgf/errors.hpp"

namespace mfgf {

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidInput("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("bad number '" + s + "'");
  }
}

std::vector<double> numbers(const std::string& args) {
  std::vector<double> out;
  if (trim(args).empty()) return out;
  for (const std::string& tok : split(args, ',')) out.push_back(to_double(tok));
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidInput(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

Distribution Distribution::gaussian(double mu, double sigma) {
  require_positive(sigma, "gaussian sigma");
  Distribution d;
  d.kind_ = Kind::Gaussian;
  d.a_ = mu;
  d.b_ = sigma;
  return d;
}

Distribution Distribution::cauchy(double location, double scale) {
  require_positive(scale, "cauchy scale");
  Distribution d;
  d.kind_ = Kind::Cauchy;
  d.a_ = location;
  d.b_ = scale;
  return d;
}

Distribution Distribution::lognormal(double meanlog, double sdlog) {
  require_positive(sdlog, "lognormal sdlog");
  Distribution d;
  d.kind_ = Kind::LogNormal;
  d.a_ = meanlog;
  d.b_ = sdlog;
  return d;
}

Distribution Distribution::mixture(std::vector<Component> components) {
  if (components.empty()) throw InvalidInput("mixture needs at least one component");
  double total = 0.0;
  for (const Component& c : components) {
    require_positive(c.weight, "mixture weight");
    require_positive(c.sd, "mixture sd");
    total += c.weight;
  }
  for (Component& c : components) c.weight /= total;
  Distribution d;
  d.kind_ = Kind::GaussianMixture;
  d.mix_ = std::move(components);
  return d;
}

Distribution Distribution::exponential(double rate) {
  require_positive(rate, "exponential rate");
  Distribution d;
  d.kind_ = Kind::Exponential;
  d.a_ = rate;
  return d;
}

Distribution Distribution::poisson(double rate) {
  require_positive(rate, "poisson rate");
  Distribution d;
  d.kind_ = Kind::Poisson;
  d.a_ = rate;
  return d;
}

Distribution Distribution::parse(const std::string& text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  std::string name = trim(s.substr(0, open));
  std::string args;
  if (open != std::string::npos) {
    if (s.back() != ')') throw InvalidInput("distribution '" + s + "' is missing ')'");
    args = s.substr(open + 1, s.size() - open - 2);
  }
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  auto params = [&](std::size_t want, std::vector<double> defaults) {
    std::vector<double> p = numbers(args);
    if (p.empty()) p = std::move(defaults);
    if (p.size() != want) throw InvalidInput("distribution '" + s + "' has the wrong arity");
    return p;
  };

  if (name == "gaussian" || name == "normal") {
    auto p = params(2, {0.0, 1.0});
    return gaussian(p[0], p[1]);
  }
  if (name == "cauchy") {
    auto p = params(2, {0.0, 1.0});
    return cauchy(p[0], p[1]);
  }
  if (name == "lognormal" || name == "log-normal") {
    auto p = params(2, {1.0, 2.0});
    return lognormal(p[0], p[1]);
  }
  if (name == "exponential") {
    auto p = params(1, {1.0});
    return exponential(p[0]);
  }
  if (name == "poisson") {
    auto p = params(1, {});
    return poisson(p[0]);
  }
  if (name == "mixture" || name == "gaussian-mixture") {
    std::vector<Component> comps;
    if (trim(args).empty()) {
      comps = {{0.5, -6.0, 1.0}, {0.5, 6.0, 1.0}};
    } else {
      for (const std::string& part : split(args, ',')) {
        const auto f = split(part, ':');
        if (f.size() != 3) throw InvalidInput("mixture components are written w:mu:sigma");
        comps.push_back({to_double(f[0]), to_double(f[1]), to_double(f[2])});
      }
    }
    return mixture(std::move(comps));
  }
  throw InvalidInput("unknown distribution '" + s + "'");
}

double Distribution::sample(RandomStream& rng) const {
  switch (kind_) {
    case Kind::Gaussian:
      return std::normal_distribution<double>(a_, b_)(rng);
    case Kind::Cauchy:
      return std::cauchy_distribution<double>(a_, b_)(rng);
    case Kind::LogNormal:
      return std::lognormal_distribution<double>(a_, b_)(rng);
    case Kind::GaussianMixture: {
      double u = uniform01(rng);
      std::size_t k = 0;
      for (; k + 1 < mix_.size(); ++k) {
        if (u < mix_[k].weight) break;
        u -= mix_[k].weight;
      }
      return std::normal_distribution<double>(mix_[k].mean, mix_[k].sd)(rng);
    }
    case Kind::Exponential:
      return std::exponential_distribution<double>(a_)(rng);
    case Kind::Poisson:
      return static_cast<double>(std::poisson_distribution<long>(a_)(rng));
  }
  return 0.0;
}

std::vector<double> Distribution::sample(RandomStream& rng, std::size_t n) const {
  std::vector<double> out(n);
  for (double& x : out) x = sample(rng);
  return out;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case Kind::Gaussian:
      return standard_normal_cdf((x - a_) / b_);
    case Kind::Cauchy:
      return 0.5 + std::atan((x - a_) / b_) / std::numbers::pi;
    case Kind::LogNormal:
      return x <= 0.0 ? 0.0 : standard_normal_cdf((std::log(x) - a_) / b_);
    case Kind::GaussianMixture: {
      double total = 0.0;
      for (const Component& c : mix_) total += c.weight * standard_normal_cdf((x - c.mean) / c.sd);
      return total;
    }
    case Kind::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-a_ * x);
    case Kind::Poisson: {
      if (x < 0.0) return 0.0;
      const long kmax = static_cast<long>(std::floor(x));
      double term = std::exp(-a_);
      double total = term;
      for (long k = 1; k <= kmax; ++k) {
        term *= a_ / static_cast<double>(k);
        total += term;
      }
      return std::min(total, 1.0);
    }
  }
  return 0.0;
}

double Distribution::pdf(double x) const {
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  switch (kind_) {
    case Kind::Gaussian: {
      const double z = (x - a_) / b_;
      return inv_sqrt_2pi * std::exp(-0.5 * z * z) / b_;
    }
    case Kind::Cauchy: {
      const double z = (x - a_) / b_;
      return 1.0 / (std::numbers::pi * b_ * (1.0 + z * z));
    }
    case Kind::LogNormal: {
      if (x <= 0.0) return 0.0;
      const double z = (std::log(x) - a_) / b_;
      return inv_sqrt_2pi * std::exp(-0.5 * z * z) / (x * b_);
    }
    case Kind::GaussianMixture: {
      double total = 0.0;
      for (const Component& c : mix_) {
        const double z = (x - c.mean) / c.sd;
        total += c.weight * inv_sqrt_2pi * std::exp(-0.5 * z * z) / c.sd;
      }
      return total;
    }
    case Kind::Exponential:
      return x < 0.0 ? 0.0 : a_ * std::exp(-a_ * x);
    case Kind::Poisson: {
      if (x < 0.0 || x != std::floor(x)) return 0.0;
      return std::exp(x * std::log(a_) - a_ - std::lgamma(x + 1.0));
    }
  }
  return 0.0;
}

double Distribution::median() const {
  switch (kind_) {
    case Kind::Gaussian:
    case Kind::Cauchy:
      return a_;
    case Kind::LogNormal:
      return std::exp(a_);
    case Kind::Exponential:
      return std::log(2.0) / a_;
    case Kind::GaussianMixture: {
      double lo = mix_.front().mean;
      double hi = lo;
      for (const Component& c : mix_) {
        lo = std::min(lo, c.mean - 40.0 * c.sd);
        hi = std::max(hi, c.mean + 40.0 * c.sd);
      }
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < 0.5 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case Kind::Poisson: {
      double k = 0.0;
      while (cdf(k) < 0.5) k += 1.0;
      return k;
    }
  }
  return 0.0;
}

std::string Distribution::describe() const {
  switch (kind_) {
    case Kind::Gaussian:
      return "gaussian(" + fmt(a_) + "," + fmt(b_) + ")";
    case Kind::Cauchy:
      return "cauchy(" + fmt(a_) + "," + fmt(b_) + ")";
    case Kind::LogNormal:
      return "lognormal(" + fmt(a_) + "," + fmt(b_) + ")";
    case Kind::Exponential:
      return "exponential(" + fmt(a_) + ")";
    case Kind::Poisson:
      return "poisson(" + fmt(a_) + ")";
    case Kind::GaussianMixture: {
      std::string s = "mixture(";
      for (std::size_t i = 0; i < mix_.size(); ++i) {
        if (i) s += ",";
        s += fmt(mix_[i].weight) + ":" + fmt(mix_[i].mean) + ":" + fmt(mix_[i].sd);
      }
      return s + ")";
    }
  }
  return "";
}

}  // namespace mfgf
