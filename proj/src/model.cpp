#include "stackcut/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stackcut {

Interval Interval::from_endpoints(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("interval endpoints out of order");
  return Interval{0.5 * (lo + hi), hi - lo};
}

void ModelParams::validate() const {
  if (n == 0) throw std::invalid_argument("empty instance: n must be positive");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(L > 0.0 && L <= 1.0)) throw std::invalid_argument("L must lie in (0, 1]");
}

bool ModelParams::assumption_holds() const { return validate_assumption(k, L); }

bool validate_assumption(int k, double L) {
  if (k < 2 || !(L > 0.0)) return false;
  const double inverse = 1.0 / ((static_cast<double>(k) / (k - 1)) * L);
  return std::abs(inverse - std::round(inverse)) <= kIntegralityTolerance;
}

double paper_length_bound(int k) { return static_cast<double>(k - 1) / (5.0 * k); }

LengthDensity::LengthDensity(std::vector<double> bin_edges, std::vector<double> bin_heights)
    : edges_(std::move(bin_edges)), heights_(std::move(bin_heights)) {
  if (edges_.size() < 2) throw std::invalid_argument("density needs at least one bin");
  if (heights_.size() + 1 != edges_.size())
    throw std::invalid_argument("density needs one height per bin");
  if (edges_.front() != 0.0) throw std::invalid_argument("density support must start at 0");
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    if (!(edges_[i] < edges_[i + 1]))
      throw std::invalid_argument("density bin edges must be strictly increasing");
  }
  if (!std::isfinite(edges_.back())) throw std::invalid_argument("density support must be finite");
  cdf_.assign(heights_.size() + 1, 0.0);
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (!(heights_[i] >= 0.0) || !std::isfinite(heights_[i]))
      throw std::invalid_argument("density heights must be finite and non-negative");
    cdf_[i + 1] = cdf_[i] + bin_mass(i);
    bound_ = std::max(bound_, heights_[i]);
  }
  if (std::abs(cdf_.back() - 1.0) > kNormalizationTolerance)
    throw std::invalid_argument("density does not integrate to 1");
}

LengthDensity LengthDensity::uniform(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  return LengthDensity({0.0, L}, {1.0 / L});
}

double LengthDensity::bin_mass(std::size_t i) const {
  return heights_.at(i) * (edges_[i + 1] - edges_[i]);
}

double LengthDensity::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0) * cdf_.back();
  // First bin whose cumulative mass exceeds u; empty bins are skipped.
  const auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  std::size_t bin = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  if (bin >= heights_.size()) {
    bin = heights_.size() - 1;
    while (bin > 0 && heights_[bin] == 0.0) --bin;
  }
  const double within = (u - cdf_[bin]) / heights_[bin];
  return std::clamp(edges_[bin] + within, edges_[bin], edges_[bin + 1]);
}

std::vector<Interval> generate_scheinerman(const ModelParams& params) {
  Rng rng(params.seed);
  return generate_scheinerman(params, rng);
}

std::vector<Interval> generate_scheinerman(const ModelParams& params, Rng& rng) {
  params.validate();
  std::vector<Interval> out(params.n);
  for (auto& iv : out) {
    iv.center = rng.uniform();
    iv.length = params.L * rng.uniform();
  }
  return out;
}

std::vector<Interval> generate_extended(const ModelParams& params, const LengthDensity& density) {
  Rng rng(params.seed);
  return generate_extended(params, density, rng);
}

std::vector<Interval> generate_extended(const ModelParams& params, const LengthDensity& density,
                                        Rng& rng) {
  params.validate();
  if (density.support_max() > params.L * (1.0 + 1e-12))
    throw std::invalid_argument("density support exceeds L");
  std::vector<Interval> out(params.n);
  for (auto& iv : out) {
    iv.center = rng.uniform();
    iv.length = density.quantile(rng.uniform());
  }
  return out;
}

LengthDensity parse_density_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("density JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("bin_edges") || !doc.contains("bin_heights"))
    throw std::invalid_argument("density JSON needs bin_edges and bin_heights");
  try {
    return LengthDensity(doc.at("bin_edges").get<std::vector<double>>(),
                         doc.at("bin_heights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("density JSON: ") + e.what());
  }
}

LengthDensity load_density(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open density file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_density_json(buf.str());
}

}  // namespace stackcut
