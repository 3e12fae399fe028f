#include "udv/grader.hpp"

#include "udv/adrc.hpp"
#include "udv/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace udv {

double weighted_distance(const StabilitySample& a, const StabilitySample& b) {
  const double de = a.zmpe - b.zmpe;
  const double dec = a.zmpec - b.zmpec;
  return std::sqrt(0.7 * de * de + 0.3 * dec * dec);
}

void ClusterModel::validate() const {
  for (std::size_t i = 1; i < centers.size(); ++i)
    if (centers[i].zmpe < centers[i - 1].zmpe)
      throw std::invalid_argument(
          "cluster model: centers must be sorted ascending by |ZMPe|");
}

ClusterModel builtin_model(Axis axis) {
  ClusterModel m;
  if (axis == Axis::kX) {
    m.centers = {{{0.0079, 0.0195},
                  {0.0315, 0.0293},
                  {0.0611, 0.0411},
                  {0.0937, 0.0506},
                  {0.1149, 0.0586}}};
  } else {
    m.centers = {{{0.0152, 0.00405},
                  {0.0213, 0.01313},
                  {0.0352, 0.0252},
                  {0.0457, 0.0406},
                  {0.0607, 0.0506}}};
  }
  return m;
}

namespace {

StabilitySample abs_sample(const StabilitySample& s) {
  return {std::abs(s.zmpe), std::abs(s.zmpec)};
}

}  // namespace

ClusterModel kmeans_train(const std::vector<StabilitySample>& dataset,
                          std::uint64_t seed, int max_iter, double tol,
                          std::vector<double>* inertia_history) {
  constexpr std::size_t k = 5;
  if (dataset.size() < k)
    throw std::invalid_argument("kmeans_train: need at least 5 samples");
  if (max_iter < 1) throw std::invalid_argument("kmeans_train: max_iter < 1");

  std::vector<StabilitySample> points;
  points.reserve(dataset.size());
  for (const auto& s : dataset) {
    if (!std::isfinite(s.zmpe) || !std::isfinite(s.zmpec))
      throw std::invalid_argument("kmeans_train: non-finite sample");
    points.push_back(abs_sample(s));
  }

  // k-means++ seeding: a random first center, then each next center
  // drawn with probability proportional to the squared distance from the
  // nearest one already chosen. Much less prone to splitting one blob
  // (and starving another) than plain random picks, and still fully
  // deterministic for a given seed.
  std::mt19937_64 rng(seed);
  std::array<StabilitySample, k> centers;
  {
    std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
    centers[0] = points[first(rng)];
    std::vector<double> d2(points.size());
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < c; ++j)
          best = std::min(best, weighted_distance(points[i], centers[j]));
        d2[i] = best * best;
        total += d2[i];
      }
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng), acc = 0.0;
      std::size_t pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
      centers[c] = points[pick];
    }
  }

  std::vector<std::size_t> assign(points.size(), 0);
  if (inertia_history) inertia_history->clear();
  for (int iter = 0; iter < max_iter; ++iter) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = weighted_distance(points[i], centers[c]);
        if (d < best) {
          best = d;
          best_c = c;
        }
      }
      assign[i] = best_c;
      inertia += best * best;
    }
    if (inertia_history) inertia_history->push_back(inertia);

    std::array<StabilitySample, k> sums{};
    std::array<std::size_t, k> counts{};
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[assign[i]].zmpe += points[i].zmpe;
      sums[assign[i]].zmpec += points[i].zmpec;
      ++counts[assign[i]];
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      StabilitySample next;
      if (counts[c] == 0) {
        // Reseed an empty cluster at the point farthest from its center.
        double far = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          const double d =
              weighted_distance(points[i], centers[assign[i]]);
          if (d > far) {
            far = d;
            far_i = i;
          }
        }
        next = points[far_i];
      } else {
        next = {sums[c].zmpe / counts[c], sums[c].zmpec / counts[c]};
      }
      shift = std::max(shift, weighted_distance(next, centers[c]));
      centers[c] = next;
    }
    if (shift < tol) break;
  }

  std::sort(centers.begin(), centers.end(),
            [](const StabilitySample& a, const StabilitySample& b) {
              return a.zmpe < b.zmpe;
            });
  ClusterModel model;
  model.centers = centers;
  return model;
}

int classify(const StabilitySample& sample, const ClusterModel& model) {
  const StabilitySample p = abs_sample(sample);
  double best = std::numeric_limits<double>::infinity();
  int level = 1;
  for (std::size_t c = 0; c < model.centers.size(); ++c) {
    const double d = weighted_distance(p, model.centers[c]);
    if (d <= best) {  // ties resolve toward the less stable level
      best = d;
      level = static_cast<int>(c) + 1;
    }
  }
  return level;
}

std::vector<StabilitySample> generate_dataset(Axis axis, int n_samples,
                                              std::uint64_t seed,
                                              double noise_amplitude) {
  if (n_samples < 50)
    throw std::invalid_argument("generate_dataset: need n_samples >= 50");

  const PlantParams plant = PlantParams::make();
  AdrcController adrc =
      axis == Axis::kX ? make_adrc_x() : make_adrc_y();
  const double dt = 0.001;
  const double zc = 0.9, g = 9.81;

  // Closed loop holding yd = 0 while seeded band-limited force noise
  // pushes the slider; the residual COM excursion maps to a ZMP error
  // via the cart-table relation zmpe = y - (zc/g)*y_dd. The disturbance
  // amplitude ramps over the run so the dataset spans all levels.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> white(0.0, 1.0);
  SliderState state;
  double d_filt = 0.0;
  const double tau = 0.02;  // disturbance bandwidth filter [s]
  const double alpha = dt / (tau + dt);

  std::vector<StabilitySample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  double prev_zmpe = 0.0;
  for (int i = 0; i < n_samples + 1; ++i) {
    const double ramp =
        0.2 + 0.8 * static_cast<double>(i) / static_cast<double>(n_samples);
    d_filt += alpha * (white(rng) - d_filt);
    const double disturbance = 60.0 * noise_amplitude * ramp * d_filt;

    const double u = adrc.step(0.0, state.position, dt);
    const double accel =
        plant_derivative(state, u, plant) + disturbance;
    state = plant_step(state, u + disturbance / plant.input_coefficient,
                       dt, plant);
    const double zmpe = state.position - (zc / g) * accel;
    if (i > 0)
      out.push_back({zmpe, (zmpe - prev_zmpe) / dt});
    prev_zmpe = zmpe;
  }
  return out;
}

void save_model(const GraderModel& model, std::ostream& out) {
  out << "# axis level zmpe zmpec\n";
  const auto dump = [&out](char axis, const ClusterModel& m) {
    for (std::size_t c = 0; c < m.centers.size(); ++c)
      out << axis << ' ' << (c + 1) << ' ' << m.centers[c].zmpe << ' '
          << m.centers[c].zmpec << '\n';
  };
  out.precision(17);
  dump('X', model.x);
  dump('Y', model.y);
}

GraderModel load_model(std::istream& in) {
  GraderModel model;
  std::array<bool, 5> seen_x{}, seen_y{};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    char axis = 0;
    int level = 0;
    double zmpe = 0.0, zmpec = 0.0;
    if (!(row >> axis >> level >> zmpe >> zmpec))
      throw std::runtime_error("grader model: malformed row: " + line);
    if (level < 1 || level > 5)
      throw std::runtime_error("grader model: level out of range");
    if (axis == 'X') {
      model.x.centers[level - 1] = {zmpe, zmpec};
      seen_x[level - 1] = true;
    } else if (axis == 'Y') {
      model.y.centers[level - 1] = {zmpe, zmpec};
      seen_y[level - 1] = true;
    } else {
      throw std::runtime_error("grader model: unknown axis");
    }
  }
  for (int c = 0; c < 5; ++c)
    if (!seen_x[c] || !seen_y[c])
      throw std::runtime_error("grader model: missing center rows");
  model.x.validate();
  model.y.validate();
  return model;
}

void save_model_file(const GraderModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  save_model(model, out);
}

GraderModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read model file: " + path);
  return load_model(in);
}

}  // namespace udv
