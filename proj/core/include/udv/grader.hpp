#ifndef UDV_GRADER_HPP_
#define UDV_GRADER_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace udv {

enum class Axis { kX, kY };

struct StabilitySample {
  double zmpe = 0.0;   // ZMP error [m]
  double zmpec = 0.0;  // ZMP error rate [m/s]
};

// rho = sqrt(0.7*(dZMPe)^2 + 0.3*(dZMPec)^2); mixes meters and m/s as
// printed, the 0.7/0.3 weights carry the normalization.
double weighted_distance(const StabilitySample& a, const StabilitySample& b);

/**
 * Five stability levels per axis, L1 (very stable) .. L5 (destabilized).
 * Centers live in (|ZMPe|, |ZMPec|) space and are sorted ascending by
 * |ZMPe| after training.
 */
struct ClusterModel {
  std::array<StabilitySample, 5> centers{};

  void validate() const;  // throws if centers are not sorted by zmpe
};

// Pretrained centers (clustered offline from walking data); the default
// model used when no model file is supplied.
ClusterModel builtin_model(Axis axis);

// Lloyd k-means (k = 5) under the weighted distance, on absolute values,
// with k-means++ seeding.
// Deterministic for a given seed; empty clusters are reseeded at the
// point farthest from its current center. If inertia_history is given it
// receives the within-cluster sum of squared weighted distances after
// every assignment pass (monotone non-increasing by construction).
ClusterModel kmeans_train(const std::vector<StabilitySample>& dataset,
                          std::uint64_t seed, int max_iter = 1000,
                          double tol = 1e-9,
                          std::vector<double>* inertia_history = nullptr);

// Level (1..5) of the nearest center on (|zmpe|, |zmpec|); ties go to
// the higher (less stable) level.
int classify(const StabilitySample& sample, const ClusterModel& model);

// Perturbed closed-loop walking runs sampled into (ZMPe, ZMPec) pairs.
// noise_amplitude scales the seeded plant disturbances.
std::vector<StabilitySample> generate_dataset(Axis axis, int n_samples,
                                              std::uint64_t seed,
                                              double noise_amplitude = 1.0);

// Plain-text model file: one "axis level zmpe zmpec" row per center,
// both axes. Throws std::runtime_error on malformed input.
struct GraderModel {
  ClusterModel x;
  ClusterModel y;
};

void save_model(const GraderModel& model, std::ostream& out);
GraderModel load_model(std::istream& in);
void save_model_file(const GraderModel& model, const std::string& path);
GraderModel load_model_file(const std::string& path);

}  // namespace udv

#endif  // UDV_GRADER_HPP_
