#include "escprob/cubature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <queue>
#include <vector>

#include "escprob/errors.hpp"

namespace escprob {

namespace {

// Kronrod 15 abscissae (descending, last is the centre) and weights; the
// embedded 7-point Gauss rule uses abscissae 1, 3, 5 and 7.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kNodes = 15;
constexpr std::size_t kBatch = 16;

struct Rule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> wk{};
  std::array<double, kNodes> wg{};
};

constexpr Rule make_rule() {
  Rule r{};
  for (int i = 0; i < 7; ++i) {
    r.x[i] = -kXgk[i];
    r.x[14 - i] = kXgk[i];
    r.wk[i] = r.wk[14 - i] = kWgk[i];
    if (i % 2 == 1) r.wg[i] = r.wg[14 - i] = kWg[i / 2];
  }
  r.x[7] = 0.0;
  r.wk[7] = kWgk[7];
  r.wg[7] = kWg[3];
  return r;
}

constexpr Rule kRule = make_rule();

struct Cell {
  Box box;
  double value = 0.0;
  double error = 0.0;
  std::uint64_t id = 0;
  bool finite = true;
};

struct WorseFirst {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.id > b.id;
  }
};

std::uint64_t nodes_per_box(int dim) {
  std::uint64_t n = 1;
  for (int i = 0; i < dim; ++i) n *= kNodes;
  return n;
}

void evaluate(const Integrand& f, Cell& cell) {
  const Box& b = cell.box;
  const int n = b.dim();
  Vec centre(n), half(n);
  double jacobian = 1.0;
  for (int i = 0; i < n; ++i) {
    centre[i] = 0.5 * (b.lower[i] + b.upper[i]);
    half[i] = 0.5 * (b.upper[i] - b.lower[i]);
    jacobian *= half[i];
  }
  double kron = 0.0, gauss = 0.0;
  std::array<int, kMaxDim> idx{};
  Vec p(n);
  const std::uint64_t total = nodes_per_box(n);
  for (std::uint64_t k = 0; k < total; ++k) {
    double wk = 1.0, wg = 1.0;
    for (int i = 0; i < n; ++i) {
      const int j = idx[static_cast<std::size_t>(i)];
      p[i] = centre[i] + half[i] * kRule.x[static_cast<std::size_t>(j)];
      wk *= kRule.wk[static_cast<std::size_t>(j)];
      wg *= kRule.wg[static_cast<std::size_t>(j)];
    }
    const double v = f(p);
    if (!std::isfinite(v)) {
      cell.finite = false;
      return;
    }
    kron += wk * v;
    gauss += wg * v;
    for (int i = 0; i < n; ++i) {
      if (++idx[static_cast<std::size_t>(i)] < kNodes) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  cell.value = kron * jacobian;
  cell.error = std::abs(kron - gauss) * jacobian;
}

void evaluate_all(const Integrand& f, std::vector<Cell>& cells, Execution exec) {
  const auto count = static_cast<std::ptrdiff_t>(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel && count > 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      evaluate(f, cells[static_cast<std::size_t>(i)]);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
  for (const Cell& c : cells)
    if (!c.finite) throw NonFiniteIntegrand("integrand returned a non-finite value");
}

}  // namespace

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
  return v;
}

int Box::longest_axis() const {
  int axis = 0;
  for (int i = 1; i < dim(); ++i)
    if (upper[i] - lower[i] > upper[axis] - lower[axis]) axis = i;
  return axis;
}

std::pair<Box, Box> Box::bisect(int axis) const {
  const double mid = 0.5 * (lower[axis] + upper[axis]);
  Box left = *this, right = *this;
  left.upper[axis] = mid;
  right.lower[axis] = mid;
  return {left, right};
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw InvalidConfig("abs_tol must be > 0");
  if (!(rel_tol >= 0.0)) throw InvalidConfig("rel_tol must be >= 0");
  if (max_subdivisions < 1) throw InvalidConfig("max_subdivisions must be >= 1");
}

QuadratureResult integrate_adaptive(const Integrand& f, std::span<const Box> boxes,
                                    const QuadratureConfig& config, Execution exec) {
  config.validate();
  if (boxes.empty()) return {};
  const int dim = boxes.front().dim();
  for (const Box& b : boxes) {
    if (b.dim() != dim || b.upper.dim() != dim) throw DimensionMismatch("boxes differ in dimension");
    if (!(b.volume() > 0.0)) throw InvalidConfig("integration box must have positive volume");
  }

  std::uint64_t next_id = 0;
  std::vector<Cell> batch;
  for (const Box& b : boxes) batch.push_back(Cell{b, 0.0, 0.0, next_id++, true});
  evaluate_all(f, batch, exec);

  std::priority_queue<Cell, std::vector<Cell>, WorseFirst> heap;
  double total_value = 0.0, total_error = 0.0;
  for (Cell& c : batch) {
    total_value += c.value;
    total_error += c.error;
    heap.push(std::move(c));
  }
  const std::uint64_t per_box = nodes_per_box(dim);
  std::uint64_t evaluations = per_box * boxes.size();

  auto tolerance = [&] { return std::max(config.abs_tol, config.rel_tol * std::abs(total_value)); };

  while (total_error > tolerance()) {
    if (heap.size() >= config.max_subdivisions) {
      throw ToleranceNotMet("adaptive cubature: subdivision limit reached", total_value,
                            total_error, evaluations);
    }
    batch.clear();
    double remaining = total_error;
    const std::size_t room = config.max_subdivisions - heap.size();
    while (!heap.empty() && batch.size() < std::min(kBatch, room) &&
           (batch.empty() || remaining > tolerance())) {
      remaining -= heap.top().error;
      batch.push_back(heap.top());
      heap.pop();
    }
    std::vector<Cell> children;
    children.reserve(2 * batch.size());
    for (const Cell& parent : batch) {
      total_value -= parent.value;
      total_error -= parent.error;
      auto [left, right] = parent.box.bisect(parent.box.longest_axis());
      children.push_back(Cell{left, 0.0, 0.0, next_id++, true});
      children.push_back(Cell{right, 0.0, 0.0, next_id++, true});
    }
    evaluate_all(f, children, exec);
    evaluations += per_box * children.size();
    for (Cell& c : children) {
      total_value += c.value;
      total_error += c.error;
      heap.push(std::move(c));
    }
    total_error = std::max(total_error, 0.0);
  }

  // Re-sum in creation order so the result does not carry the running drift.
  std::vector<Cell> cells;
  cells.reserve(heap.size());
  while (!heap.empty()) {
    cells.push_back(heap.top());
    heap.pop();
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  QuadratureResult out;
  for (const Cell& c : cells) {
    out.value += c.value;
    out.error += c.error;
  }
  out.evaluations = evaluations;
  out.boxes = cells.size();
  return out;
}

QuadratureResult integrate_adaptive(const Integrand& f, const Box& box,
                                    const QuadratureConfig& config, Execution exec) {
  return integrate_adaptive(f, std::span<const Box>(&box, 1), config, exec);
}

QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              std::span<const double> breakpoints, const QuadratureConfig& config) {
  std::vector<Box> boxes;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (breakpoints[i + 1] > breakpoints[i])
      boxes.push_back(Box{Vec{breakpoints[i]}, Vec{breakpoints[i + 1]}});
  return integrate_adaptive([&f](const Vec& x) { return f(x[0]); }, boxes, config,
                            Execution::serial);
}

}  // namespace escprob
