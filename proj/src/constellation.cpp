// Constellation construction and moment computation (see constellation.hpp).

#include "wdmsnr/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wdmsnr {

namespace {

// Square M-QAM on the odd-integer grid {..,-3,-1,1,3,..} x same.
std::vector<std::complex<double>> square_qam(int m) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  if (side * side != m) throw std::invalid_argument("square QAM size must be a square");
  std::vector<std::complex<double>> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < side; ++i)
    for (int q = 0; q < side; ++q)
      pts.emplace_back(2 * i - side + 1, 2 * q - side + 1);
  return pts;
}

void finish_moments(ConstellationSpec& c) {
  double mu2 = 0.0;
  std::complex<double> mean{0.0, 0.0};
  for (const auto& p : c.points) {
    mean += p;
    mu2 += std::norm(p);
  }
  const double n = static_cast<double>(c.points.size());
  mean /= n;
  mu2 /= n;
  if (std::abs(mean) > 1e-12 * std::sqrt(mu2))
    throw std::invalid_argument("constellation must have zero mean");
  if (mu2 <= 0.0) throw std::invalid_argument("constellation has zero power");
  const double scale = 1.0 / std::sqrt(mu2);
  double mu4 = 0.0, mu6 = 0.0;
  for (auto& p : c.points) {
    p *= scale;
    const double a2 = std::norm(p);
    mu4 += a2 * a2;
    mu6 += a2 * a2 * a2;
  }
  c.mu2 = 1.0;
  c.mu4 = mu4 / n;
  c.mu6 = mu6 / n;
}

} // namespace

ConstellationSpec make_constellation(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  ConstellationSpec c;
  c.name = key;
  if (key == "gaussian") {
    // Continuous circular-Gaussian source: no point list; exact moments.
    c.gaussian = true;
    c.mu2 = 1.0;
    c.mu4 = 2.0;
    c.mu6 = 6.0;
    return c;
  }
  int size = 0;
  if (key == "qpsk" || key == "4qam") size = 4;
  else if (key == "16qam") size = 16;
  else if (key == "64qam") size = 64;
  else if (key == "256qam") size = 256;
  else throw std::invalid_argument("unknown constellation: " + name);
  c.points = square_qam(size);
  finish_moments(c);
  return c;
}

ConstellationSpec make_constellation(const std::string& name,
                                     const std::vector<std::complex<double>>& raw_points) {
  if (raw_points.empty()) throw std::invalid_argument("constellation point list is empty");
  ConstellationSpec c;
  c.name = name;
  c.points = raw_points;
  finish_moments(c);
  return c;
}

double moment_bracket4(const ConstellationSpec& c) {
  return c.mu4 / (c.mu2 * c.mu2) - 2.0;
}

double moment_bracket6(const ConstellationSpec& c) {
  const double m4 = c.mu4 / (c.mu2 * c.mu2);
  const double m6 = c.mu6 / (c.mu2 * c.mu2 * c.mu2);
  return m6 - 9.0 * m4 + 12.0;
}

} // namespace wdmsnr
