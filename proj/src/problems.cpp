#include "bsmobo/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace bsmobo {

namespace {

constexpr double kPi = std::numbers::pi;

// Caps the sqrt/power ratios of the ZDT family at boundary kinks so the
// one-sided derivative stays finite (see header).
constexpr double kBoundaryCap = 1e-12;

double zdt_g_linear(const DecisionVector& x) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += x[i];
  return 1.0 + 9.0 * sum / static_cast<double>(x.size() - 1);
}

std::vector<ObjectiveVector> uniform_f1_front(std::size_t count, double f1_lo, double f1_hi,
                                              double (*f2_of_f1)(double)) {
  std::vector<ObjectiveVector> front;
  front.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f1 =
        f1_lo + (f1_hi - f1_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    front.push_back({f1, f2_of_f1(f1)});
  }
  return front;
}

// All nonnegative integer compositions of h into m parts, scaled by 1/h
// (Das-Dennis simplex lattice), in lexicographic order.
void simplex_lattice_rec(std::size_t m, std::size_t h, std::size_t level,
                         std::vector<std::size_t>& partial,
                         std::vector<ObjectiveVector>& out) {
  if (level == m - 1) {
    partial[level] = h;
    ObjectiveVector w(m);
    std::size_t total = 0;
    for (std::size_t i = 0; i < m; ++i) total += partial[i];
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = static_cast<double>(partial[i]) / static_cast<double>(total);
    }
    out.push_back(std::move(w));
    return;
  }
  for (std::size_t i = 0; i <= h; ++i) {
    partial[level] = i;
    simplex_lattice_rec(m, h - i, level + 1, partial, out);
  }
}

std::vector<ObjectiveVector> simplex_lattice(std::size_t m, std::size_t subdivisions) {
  std::vector<ObjectiveVector> out;
  std::vector<std::size_t> partial(m, 0);
  simplex_lattice_rec(m, subdivisions, 0, partial, out);
  return out;
}

std::size_t lattice_size(std::size_t m, std::size_t h) {
  // C(h + m - 1, m - 1)
  std::size_t result = 1;
  for (std::size_t i = 1; i < m; ++i) {
    result = result * (h + i) / i;
  }
  return result;
}

std::vector<ObjectiveVector> subsample_evenly(std::vector<ObjectiveVector> points,
                                              std::size_t count) {
  if (points.size() <= count) return points;
  std::vector<ObjectiveVector> picked;
  picked.reserve(count);
  const double stride =
      static_cast<double>(points.size() - 1) / static_cast<double>(count - 1);
  for (std::size_t t = 0; t < count; ++t) {
    const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(t) * stride));
    picked.push_back(std::move(points[idx]));
  }
  return picked;
}

// Peak of exp(-4x) sin^6(6 pi x) over the first hump; fixes the low end of
// the zdt6 front.
double zdt6_f1_minimum() {
  auto h = [](double x) {
    const double s = std::sin(6.0 * kPi * x);
    return std::exp(-4.0 * x) * s * s * s * s * s * s;
  };
  double lo = 0.0, hi = 1.0 / 6.0;
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (h(a) < h(b)) {
      lo = a;
    } else {
      hi = b;
    }
  }
  return 1.0 - h(0.5 * (lo + hi));
}

}  // namespace

Problem Problem::make(std::string_view name, std::size_t dimension, std::size_t objectives) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  const bool is_zdt = key.rfind("zdt", 0) == 0;
  const bool is_dtlz = key.rfind("dtlz", 0) == 0;

  Kind kind;
  if (key == "zdt1") kind = Kind::Zdt1;
  else if (key == "zdt2") kind = Kind::Zdt2;
  else if (key == "zdt3") kind = Kind::Zdt3;
  else if (key == "zdt4") kind = Kind::Zdt4;
  else if (key == "zdt6") kind = Kind::Zdt6;
  else if (key == "dtlz1") kind = Kind::Dtlz1;
  else if (key == "dtlz2") kind = Kind::Dtlz2;
  else throw std::invalid_argument("unknown problem '" + key + "'");

  std::size_t m = objectives;
  if (is_zdt) {
    if (m == 0) m = 2;
    if (m != 2) throw std::invalid_argument(key + " is a bi-objective problem");
    if (dimension < 2) throw std::invalid_argument(key + " needs dimension >= 2");
  } else {
    if (m == 0) m = 3;
    if (m < 2) throw std::invalid_argument(key + " needs at least 2 objectives");
    if (dimension < m) throw std::invalid_argument(key + " needs dimension >= objectives");
  }

  std::vector<double> lo(dimension, 0.0), hi(dimension, 1.0);
  if (kind == Kind::Zdt4) {
    for (std::size_t i = 1; i < dimension; ++i) {
      lo[i] = -5.0;
      hi[i] = 5.0;
    }
  }

  const bool diff = kind == Kind::Zdt2 || kind == Kind::Dtlz1 || kind == Kind::Dtlz2;
  (void)is_dtlz;
  return Problem(kind, key, dimension, m, BoxBounds(std::move(lo), std::move(hi)), diff);
}

const std::vector<std::string>& Problem::names() {
  static const std::vector<std::string> kNames = {"zdt1",  "zdt2",  "zdt3", "zdt4",
                                                  "zdt6",  "dtlz1", "dtlz2"};
  return kNames;
}

void Problem::check_input(const DecisionVector& x) const {
  if (x.size() != n_) throw std::domain_error(name_ + ": decision vector of wrong length");
  if (!bounds_.contains(x)) throw std::domain_error(name_ + ": decision vector out of bounds");
}

ObjectiveVector Problem::evaluate(const DecisionVector& x) const {
  check_input(x);
  switch (kind_) {
    case Kind::Zdt1: {
      const double g = zdt_g_linear(x);
      return {x[0], g - std::sqrt(x[0] * g)};
    }
    case Kind::Zdt2: {
      const double g = zdt_g_linear(x);
      return {x[0], g - x[0] * x[0] / g};
    }
    case Kind::Zdt3: {
      const double g = zdt_g_linear(x);
      return {x[0], g - std::sqrt(x[0] * g) - x[0] * std::sin(10.0 * kPi * x[0])};
    }
    case Kind::Zdt4: {
      double g = 1.0 + 10.0 * static_cast<double>(n_ - 1);
      for (std::size_t i = 1; i < n_; ++i) {
        g += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
      }
      return {x[0], g - std::sqrt(x[0] * g)};
    }
    case Kind::Zdt6: {
      const double s6 = std::pow(std::sin(6.0 * kPi * x[0]), 6.0);
      const double f1 = 1.0 - std::exp(-4.0 * x[0]) * s6;
      double mean = 0.0;
      for (std::size_t i = 1; i < n_; ++i) mean += x[i];
      mean /= static_cast<double>(n_ - 1);
      const double g = 1.0 + 9.0 * std::pow(mean, 0.25);
      return {f1, g - f1 * f1 / g};
    }
    case Kind::Dtlz1: {
      double g = static_cast<double>(n_ - m_ + 1);
      for (std::size_t i = m_ - 1; i < n_; ++i) {
        const double z = x[i] - 0.5;
        g += z * z - std::cos(20.0 * kPi * z);
      }
      g *= 100.0;
      ObjectiveVector f(m_);
      for (std::size_t j = 0; j < m_; ++j) {
        double value = 0.5 * (1.0 + g);
        for (std::size_t i = 0; i + j + 1 < m_; ++i) value *= x[i];
        if (j > 0) value *= 1.0 - x[m_ - 1 - j];
        f[j] = value;
      }
      return f;
    }
    case Kind::Dtlz2: {
      double g = 0.0;
      for (std::size_t i = m_ - 1; i < n_; ++i) {
        const double z = x[i] - 0.5;
        g += z * z;
      }
      ObjectiveVector f(m_);
      for (std::size_t j = 0; j < m_; ++j) {
        double value = 1.0 + g;
        for (std::size_t i = 0; i + j + 1 < m_; ++i) value *= std::cos(x[i] * kPi / 2.0);
        if (j > 0) value *= std::sin(x[m_ - 1 - j] * kPi / 2.0);
        f[j] = value;
      }
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

std::pair<ObjectiveVector, GradientMatrix> Problem::evaluate_with_gradient(
    const DecisionVector& x) const {
  ObjectiveVector f = evaluate(x);
  GradientMatrix grad(m_, n_);
  const double inv = 1.0 / static_cast<double>(n_ - 1);

  switch (kind_) {
    case Kind::Zdt1: {
      const double g = zdt_g_linear(x);
      const double ratio = std::max(x[0] / g, kBoundaryCap);
      grad.at(0, 0) = 1.0;
      grad.at(1, 0) = -0.5 / std::sqrt(ratio);
      for (std::size_t i = 1; i < n_; ++i) {
        grad.at(1, i) = 9.0 * inv * (1.0 - 0.5 * std::sqrt(ratio));
      }
      break;
    }
    case Kind::Zdt2: {
      const double g = zdt_g_linear(x);
      grad.at(0, 0) = 1.0;
      grad.at(1, 0) = -2.0 * x[0] / g;
      const double r2 = (x[0] / g) * (x[0] / g);
      for (std::size_t i = 1; i < n_; ++i) grad.at(1, i) = 9.0 * inv * (1.0 + r2);
      break;
    }
    case Kind::Zdt3: {
      const double g = zdt_g_linear(x);
      const double ratio = std::max(x[0] / g, kBoundaryCap);
      const double w = 10.0 * kPi * x[0];
      grad.at(0, 0) = 1.0;
      grad.at(1, 0) = -0.5 / std::sqrt(ratio) - std::sin(w) - w * std::cos(w);
      for (std::size_t i = 1; i < n_; ++i) {
        grad.at(1, i) = 9.0 * inv * (1.0 - 0.5 * std::sqrt(ratio));
      }
      break;
    }
    case Kind::Zdt4: {
      double g = 1.0 + 10.0 * static_cast<double>(n_ - 1);
      for (std::size_t i = 1; i < n_; ++i) {
        g += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
      }
      const double ratio = std::max(x[0] / g, kBoundaryCap);
      grad.at(0, 0) = 1.0;
      grad.at(1, 0) = -0.5 / std::sqrt(ratio);
      for (std::size_t i = 1; i < n_; ++i) {
        const double dg = 2.0 * x[i] + 40.0 * kPi * std::sin(4.0 * kPi * x[i]);
        grad.at(1, i) = dg * (1.0 - 0.5 * std::sqrt(ratio));
      }
      break;
    }
    case Kind::Zdt6: {
      const double s = std::sin(6.0 * kPi * x[0]);
      const double c = std::cos(6.0 * kPi * x[0]);
      const double e = std::exp(-4.0 * x[0]);
      const double s5 = s * s * s * s * s;
      const double f1 = f[0];
      const double df1 = 4.0 * e * s5 * s - 36.0 * kPi * e * s5 * c;
      double mean = 0.0;
      for (std::size_t i = 1; i < n_; ++i) mean += x[i];
      mean *= inv;
      const double g = 1.0 + 9.0 * std::pow(mean, 0.25);
      grad.at(0, 0) = df1;
      grad.at(1, 0) = -2.0 * f1 * df1 / g;
      const double dg = 2.25 * std::pow(std::max(mean, kBoundaryCap), -0.75) * inv;
      const double r2 = (f1 / g) * (f1 / g);
      for (std::size_t i = 1; i < n_; ++i) grad.at(1, i) = dg * (1.0 + r2);
      break;
    }
    case Kind::Dtlz1: {
      double g = static_cast<double>(n_ - m_ + 1);
      for (std::size_t i = m_ - 1; i < n_; ++i) {
        const double z = x[i] - 0.5;
        g += z * z - std::cos(20.0 * kPi * z);
      }
      g *= 100.0;
      for (std::size_t j = 0; j < m_; ++j) {
        // position product of f_j with each factor available for exclusion
        auto product_excluding = [&](std::size_t skip) {
          double value = 1.0;
          for (std::size_t i = 0; i + j + 1 < m_; ++i) {
            if (i != skip) value *= x[i];
          }
          if (j > 0 && skip != m_ - 1 - j) value *= 1.0 - x[m_ - 1 - j];
          return value;
        };
        const double pos = product_excluding(n_);  // no exclusion
        for (std::size_t i = 0; i + j + 1 < m_; ++i) {
          grad.at(j, i) = 0.5 * (1.0 + g) * product_excluding(i);
        }
        if (j > 0) grad.at(j, m_ - 1 - j) = -0.5 * (1.0 + g) * product_excluding(m_ - 1 - j);
        for (std::size_t i = m_ - 1; i < n_; ++i) {
          const double z = x[i] - 0.5;
          const double dg = 100.0 * (2.0 * z + 20.0 * kPi * std::sin(20.0 * kPi * z));
          grad.at(j, i) = 0.5 * pos * dg;
        }
      }
      break;
    }
    case Kind::Dtlz2: {
      double g = 0.0;
      for (std::size_t i = m_ - 1; i < n_; ++i) {
        const double z = x[i] - 0.5;
        g += z * z;
      }
      const double half_pi = kPi / 2.0;
      for (std::size_t j = 0; j < m_; ++j) {
        auto trig_product = [&](std::size_t replace) {
          double value = 1.0;
          for (std::size_t i = 0; i + j + 1 < m_; ++i) {
            value *= (i == replace) ? -half_pi * std::sin(x[i] * half_pi)
                                    : std::cos(x[i] * half_pi);
          }
          if (j > 0) {
            const std::size_t p = m_ - 1 - j;
            value *= (p == replace) ? half_pi * std::cos(x[p] * half_pi)
                                    : std::sin(x[p] * half_pi);
          }
          return value;
        };
        const double pos = trig_product(n_);  // no replacement
        for (std::size_t i = 0; i + j + 1 < m_; ++i) {
          grad.at(j, i) = (1.0 + g) * trig_product(i);
        }
        if (j > 0) {
          const std::size_t p = m_ - 1 - j;
          grad.at(j, p) = (1.0 + g) * trig_product(p);
        }
        for (std::size_t i = m_ - 1; i < n_; ++i) {
          grad.at(j, i) = pos * 2.0 * (x[i] - 0.5);
        }
      }
      break;
    }
  }
  return {std::move(f), std::move(grad)};
}

std::vector<ObjectiveVector> Problem::reference_front(std::size_t count) const {
  if (count < 2) throw std::domain_error("reference_front: count must be at least 2");
  switch (kind_) {
    case Kind::Zdt1:
    case Kind::Zdt4:
      return uniform_f1_front(count, 0.0, 1.0, +[](double f1) { return 1.0 - std::sqrt(f1); });
    case Kind::Zdt2:
      return uniform_f1_front(count, 0.0, 1.0, +[](double f1) { return 1.0 - f1 * f1; });
    case Kind::Zdt6: {
      static const double f1_min = zdt6_f1_minimum();
      return uniform_f1_front(count, f1_min, 1.0, +[](double f1) { return 1.0 - f1 * f1; });
    }
    case Kind::Zdt3: {
      // Disconnected front: sample the g = 1 curve densely, keep the
      // nondominated part, densify until `count` points survive.
      std::size_t grid = std::max<std::size_t>(count * 20, 4000);
      while (true) {
        std::vector<ObjectiveVector> keep;
        double best_f2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < grid; ++i) {
          const double f1 = static_cast<double>(i) / static_cast<double>(grid - 1);
          const double f2 = 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1);
          if (f2 < best_f2) {
            keep.push_back({f1, f2});
            best_f2 = f2;
          }
        }
        if (keep.size() >= count) return subsample_evenly(std::move(keep), count);
        grid *= 2;
      }
    }
    case Kind::Dtlz1: {
      std::size_t h = 1;
      while (lattice_size(m_, h) < count) ++h;
      auto points = simplex_lattice(m_, h);
      for (auto& w : points) {
        for (double& v : w) v *= 0.5;
      }
      return subsample_evenly(std::move(points), count);
    }
    case Kind::Dtlz2: {
      std::size_t h = 1;
      while (lattice_size(m_, h) < count) ++h;
      auto points = simplex_lattice(m_, h);
      for (auto& w : points) {
        double norm = 0.0;
        for (double v : w) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : w) v /= norm;
      }
      return subsample_evenly(std::move(points), count);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace bsmobo
