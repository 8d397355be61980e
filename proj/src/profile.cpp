#include "eb/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eb/fft.hpp"

namespace eb {

Grid::Grid(double x_min_, double x_max_, std::size_t n_) : x_min(x_min_), x_max(x_max_), n(n_) {
  if (!(x_min < x_max)) throw BadParams("Grid: x_min must be < x_max");
  if (n < 16) throw BadParams("Grid: need at least 16 samples");
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = x(i);
  return xs;
}

double Profile::max_sqrt_m() const {
  double v = 1.0;
  for (double mi : m) v = std::max(v, std::sqrt(mi));
  return v;
}

void differentiate(const std::vector<double>& q, const Grid& grid,
                   std::vector<double>& q_x, std::vector<double>& q_xx) {
  if (q.size() != grid.n) throw BadParams("differentiate: sample count does not match grid");
  for (double v : q)
    if (!std::isfinite(v)) throw BadParams("differentiate: non-finite sample");
  const double period = grid.periodic_length();
  q_x = fft::derivative(q, period, 1);
  q_xx = fft::derivative(q, period, 2);
}

namespace {

void finish_profile(Profile& p, double tail_tol) {
  differentiate(p.q, p.grid, p.q_x, p.q_xx);
  p.m.resize(p.grid.n);
  for (std::size_t i = 0; i < p.grid.n; ++i) p.m[i] = 1.0 + p.q_x[i] * p.q_x[i];
  const double left = std::abs(p.q_x.front());
  const double right = std::abs(p.q_x.back());
  if (left >= tail_tol || right >= tail_tol) {
    std::ostringstream os;
    os << "profile tail not decayed: |q_x| = " << std::max(left, right)
       << " at a grid endpoint (tail_tol = " << tail_tol << ")";
    throw TailNotDecayed(os.str());
  }
}

double get_param(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw BadParams("build_profile: missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw BadParams("build_profile: non-finite parameter '" + key + "'");
  return it->second;
}

}  // namespace

Profile build_profile(ProfileKind kind, const ParamMap& params, const Grid& grid, double tail_tol) {
  if (kind == ProfileKind::custom_samples)
    throw BadParams("build_profile: custom_samples requires build_profile_from_samples");
  const double amp = get_param(params, "amp");
  const double width = get_param(params, "width");
  if (width <= 0.0) throw BadParams("build_profile: width must be positive");

  Profile p;
  p.grid = grid;
  p.q.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    if (kind == ProfileKind::gaussian) {
      p.q[i] = amp * std::exp(-(x * x) / (width * width));
    } else {
      p.q[i] = amp / std::cosh(x / width);
    }
  }
  finish_profile(p, tail_tol);
  return p;
}

Profile build_profile_from_samples(std::vector<double> samples, const Grid& grid, double tail_tol) {
  if (samples.size() != grid.n) throw BadParams("build_profile: sample count does not match grid");
  Profile p;
  p.grid = grid;
  p.q = std::move(samples);
  finish_profile(p, tail_tol);
  return p;
}

namespace {

// Per-interval weights of the 4-point interpolatory rule for
// int_{x_i}^{x_{i+1}} f. Symmetric under direction reversal, O(h^4)
// composite, so the left/right charge split telescopes exactly.
std::vector<double> interval_integrals(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> I(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double v;
    if (i == 0) {
      v = (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    } else if (i + 2 == n) {
      v = (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0;
    } else {
      v = (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) / 24.0;
    }
    I[i] = h * v;
  }
  return I;
}

}  // namespace

ChargeDecomposition charges(const Profile& p) {
  const std::size_t n = p.grid.n;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::sqrt(p.m[i]) - 1.0;

  auto I = interval_integrals(f, p.grid.spacing());
  // the integrand is nonnegative (m >= 1); clamp quadrature noise so the
  // monotonicity of c_plus / c_minus holds exactly
  for (double& v : I) v = std::max(v, 0.0);

  ChargeDecomposition cd;
  cd.c_minus_of_x.resize(n);
  cd.c_plus_of_x.resize(n);
  cd.c_minus_of_x[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) cd.c_minus_of_x[i] = cd.c_minus_of_x[i - 1] + I[i - 1];
  cd.c_plus_of_x[n - 1] = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) cd.c_plus_of_x[i] = cd.c_plus_of_x[i + 1] + I[i];
  cd.c_total = cd.c_plus_of_x[0];
  return cd;
}

double y_of_x(const Profile& p, double x) {
  if (!p.grid.contains(x)) throw OutOfDomain("y_of_x: x outside the grid");
  const auto cd = charges(p);
  const double h = p.grid.spacing();
  // cubic Lagrange through the four cumulative values around x
  long i = static_cast<long>(std::floor((x - p.grid.x_min) / h));
  i = std::clamp<long>(i - 1, 0, static_cast<long>(p.grid.n) - 4);
  double cplus = 0.0;
  for (long j = i; j < i + 4; ++j) {
    double lj = 1.0;
    for (long k = i; k < i + 4; ++k) {
      if (k == j) continue;
      lj *= (x - p.grid.x(static_cast<std::size_t>(k))) /
            (p.grid.x(static_cast<std::size_t>(j)) - p.grid.x(static_cast<std::size_t>(k)));
    }
    cplus += lj * cd.c_plus_of_x[static_cast<std::size_t>(j)];
  }
  return x - cplus;
}

void write_profile_csv(const Profile& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw BadParams("write_profile_csv: cannot open " + path);
  os << "x,q\n";
  char buf[80];
  for (std::size_t i = 0; i < p.grid.n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.grid.x(i), p.q[i]);
    os << buf;
  }
}

Profile read_profile_csv(const std::string& path, double tail_tol) {
  std::ifstream is(path);
  if (!is) throw BadParams("read_profile_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,q", 0) != 0)
    throw BadParams("read_profile_csv: expected header 'x,q'");
  std::vector<double> xs, qs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw BadParams("read_profile_csv: malformed row");
    xs.push_back(std::stod(line.substr(0, comma)));
    qs.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 16) throw BadParams("read_profile_csv: too few samples");
  const double h = xs[1] - xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs((xs[i] - xs[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(xs[i])))
      throw BadParams("read_profile_csv: grid must be uniform");
  }
  Grid g(xs.front(), xs.back(), xs.size());
  return build_profile_from_samples(std::move(qs), g, tail_tol);
}

}  // namespace eb
