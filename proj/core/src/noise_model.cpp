#include "mpe/noise_model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "mpe/error.hpp"
#include "mpe/special_functions.hpp"

namespace mpe {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

double normal_pdf(double w, double theta, double sigma) {
  const double u = (w - theta) / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

GaussianNoise::GaussianNoise(double sigma) : sigma_(sigma) {
  require_positive(sigma, "Gaussian sigma");
}

LaplacianNoise::LaplacianNoise(double b) : b_(b) { require_positive(b, "Laplacian scale b"); }

StudentTNoise::StudentTNoise(double dof, double scale) : dof_(dof), scale_(scale) {
  require_positive(dof, "Student-t dof");
  if (!(dof > 2.0)) throw DomainError("Student-t dof must exceed 2 for finite variance");
  require_positive(scale, "Student-t scale");
}

GmmModel::GmmModel(std::vector<GmmComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("GMM needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw DomainError("GMM weight must lie in (0, 1]");
    if (!std::isfinite(c.theta)) throw DomainError("GMM mean must be finite");
    require_positive(c.sigma, "GMM sigma");
    total += c.alpha;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "GMM weights sum to " << total << ", expected 1";
    throw DomainError(msg.str());
  }
  for (auto& c : components_) c.alpha /= total;
}

double GmmModel::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.alpha * c.theta;
  return m;
}

double GmmModel::variance() const {
  const double m = mean();
  double v = 0.0;
  for (const auto& c : components_) {
    const double d = c.theta - m;
    v += c.alpha * (c.sigma * c.sigma + d * d);
  }
  return v;
}

double GmmModel::pdf(double w) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.alpha * normal_pdf(w, c.theta, c.sigma);
  return p;
}

double GmmModel::cdf(double w) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.alpha * q_function((c.theta - w) / c.sigma);
  return p;
}

double GmmModel::survival(double w) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.alpha * q_function((w - c.theta) / c.sigma);
  return p;
}

GmmModel GmmModel::scaled(double scale) const {
  require_positive(scale, "GMM scale factor");
  std::vector<GmmComponent> out = components_;
  for (auto& c : out) {
    c.theta *= scale;
    c.sigma *= scale;
  }
  return GmmModel(std::move(out));
}

std::string_view family_name(const NoiseModel& model) {
  return std::visit(Overloaded{[](const GaussianNoise&) { return std::string_view("gaussian"); },
                               [](const LaplacianNoise&) { return std::string_view("laplacian"); },
                               [](const StudentTNoise&) { return std::string_view("student_t"); },
                               [](const GmmModel&) { return std::string_view("gmm"); }},
                    model);
}

double variance(const NoiseModel& model) {
  return std::visit(
      Overloaded{[](const GaussianNoise& g) { return g.sigma() * g.sigma(); },
                 [](const LaplacianNoise& l) { return 2.0 * l.b() * l.b(); },
                 [](const StudentTNoise& t) {
                   return t.scale() * t.scale() * t.dof() / (t.dof() - 2.0);
                 },
                 [](const GmmModel& g) { return g.variance(); }},
      model);
}

double pdf(const NoiseModel& model, double w) {
  return std::visit(
      Overloaded{[w](const GaussianNoise& g) { return normal_pdf(w, 0.0, g.sigma()); },
                 [w](const LaplacianNoise& l) {
                   return std::exp(-std::abs(w) / l.b()) / (2.0 * l.b());
                 },
                 [w](const StudentTNoise& t) {
                   const double v = t.dof();
                   const double u = w / t.scale();
                   const double log_norm = std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v) -
                                           0.5 * std::log(v * std::numbers::pi);
                   return std::exp(log_norm - 0.5 * (v + 1.0) * std::log1p(u * u / v)) /
                          t.scale();
                 },
                 [w](const GmmModel& g) { return g.pdf(w); }},
      model);
}

double cdf(const NoiseModel& model, double w) {
  return std::visit(
      Overloaded{[w](const GaussianNoise& g) { return q_function(-w / g.sigma()); },
                 [w](const LaplacianNoise& l) {
                   const double half_tail = 0.5 * std::exp(-std::abs(w) / l.b());
                   return w < 0.0 ? half_tail : 1.0 - half_tail;
                 },
                 [w](const StudentTNoise& t) { return student_t_cdf(w / t.scale(), t.dof()); },
                 [w](const GmmModel& g) { return g.cdf(w); }},
      model);
}

double survival(const NoiseModel& model, double w) {
  // Laplacian and Student-t are symmetric: 1 - F(w) = F(-w).
  return std::visit(Overloaded{[w](const GaussianNoise& g) { return q_function(w / g.sigma()); },
                               [w](const GmmModel& g) { return g.survival(w); },
                               [&model, w](const auto&) { return cdf(model, -w); }},
                    model);
}

NoiseModel scaled_to_variance(const NoiseModel& shape, double target_variance) {
  require_positive(target_variance, "target variance");
  return std::visit(
      Overloaded{
          [&](const GaussianNoise&) -> NoiseModel {
            return GaussianNoise(std::sqrt(target_variance));
          },
          [&](const LaplacianNoise&) -> NoiseModel {
            return LaplacianNoise(std::sqrt(0.5 * target_variance));
          },
          [&](const StudentTNoise& t) -> NoiseModel {
            return StudentTNoise(t.dof(), std::sqrt(target_variance * (t.dof() - 2.0) / t.dof()));
          },
          [&](const GmmModel& g) -> NoiseModel {
            return g.scaled(std::sqrt(target_variance / g.variance()));
          }},
      shape);
}

Signal sample(const NoiseModel& model, std::size_t n, RngStream& rng) {
  Signal out(n);
  std::visit(Overloaded{[&](const GaussianNoise& g) {
                          for (auto& v : out) v = g.sigma() * rng.normal();
                        },
                        [&](const LaplacianNoise& l) {
                          for (auto& v : out) v = rng.laplace(l.b());
                        },
                        [&](const StudentTNoise& t) {
                          for (auto& v : out) v = t.scale() * rng.student_t(t.dof());
                        },
                        [&](const GmmModel& g) {
                          const auto comps = g.components();
                          for (auto& v : out) {
                            const double u = rng.uniform();
                            std::size_t m = 0;
                            double acc = comps[0].alpha;
                            while (u >= acc && m + 1 < comps.size()) acc += comps[++m].alpha;
                            v = comps[m].theta + comps[m].sigma * rng.normal();
                          }
                        }},
             model);
  return out;
}

void write_gmm(std::ostream& out, const GmmModel& model) {
  const auto old_precision = out.precision(17);
  out << "# gaussian mixture model\n";
  out << "components=" << model.size() << '\n';
  for (const auto& c : model.components()) {
    out << "alpha=" << c.alpha << " theta=" << c.theta << " sigma=" << c.sigma << '\n';
  }
  out.precision(old_precision);
}

namespace {

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError("expected a finite number, got '" + std::string(text) + "'", line);
  }
  return value;
}

}  // namespace

GmmModel read_gmm(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool have_header = false;
  std::vector<GmmComponent> components;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string token;
    if (!have_header) {
      tokens >> token;
      const std::string key = "components=";
      if (token.rfind(key, 0) != 0) throw ParseError("expected 'components=<M>'", line_no);
      const double m = parse_double(std::string_view(token).substr(key.size()), line_no);
      if (m < 1.0 || m != std::floor(m)) throw ParseError("component count must be >= 1", line_no);
      expected = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    GmmComponent c{};
    bool has_alpha = false;
    bool has_theta = false;
    bool has_sigma = false;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + token + "'", line_no);
      const std::string key = token.substr(0, eq);
      const double value = parse_double(std::string_view(token).substr(eq + 1), line_no);
      if (key == "alpha") {
        c.alpha = value;
        has_alpha = true;
      } else if (key == "theta") {
        c.theta = value;
        has_theta = true;
      } else if (key == "sigma") {
        c.sigma = value;
        has_sigma = true;
      } else {
        throw ParseError("unknown key '" + key + "'", line_no);
      }
    }
    if (!has_alpha || !has_theta || !has_sigma) {
      throw ParseError("component needs alpha, theta and sigma", line_no);
    }
    components.push_back(c);
  }
  if (!have_header) throw ParseError("missing 'components=<M>' header", 0);
  if (components.size() != expected) {
    throw ParseError("declared " + std::to_string(expected) + " components, found " +
                         std::to_string(components.size()),
                     0);
  }
  try {
    return GmmModel(std::move(components));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

void save_gmm(const GmmModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_gmm(out, model);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

GmmModel load_gmm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_gmm(in);
}

}  // namespace mpe
