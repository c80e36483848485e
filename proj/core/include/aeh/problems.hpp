#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aeh/autodiff.hpp"
#include "aeh/errors.hpp"

namespace aeh {

enum class ProblemName {
  HeatSteep,
  Helmholtz,
  ConvectionDominated,
  AllenCahn,
  SineGordon,
  Multiscale4d,
};

std::string to_string(ProblemName name);
ProblemName problem_from_string(const std::string& s);

enum class SampleGroup { Residual, Initial, Boundary };

/// One benchmark PDE: domain, parameters and which closed forms exist.
/// Coordinates are ordered spatial first, time last.
struct ProblemSpec {
  ProblemName name;
  int spatial_dim = 1;
  bool has_time = false;
  std::vector<std::pair<double, double>> domain;  // closed interval per coordinate
  std::map<std::string, double> params;
  bool exact_solution_available = true;

  int input_dim() const { return spatial_dim + (has_time ? 1 : 0); }
  int boundary_face_count() const { return 2 * spatial_dim; }
};

/// Builds the named problem with its default parameters, applying overrides.
ProblemSpec build_problem(ProblemName name,
                          const std::map<std::string, double>& overrides = {});

/// Closed-form solution. Throws ConfigError for Allen-Cahn (no closed form;
/// a reference file is ingested instead).
double exact_solution(const ProblemSpec& problem, const Eigen::VectorXd& x);

/// Analytic value / gradient / diagonal Hessian of the exact solution.
JetValue exact_solution_jet(const ProblemSpec& problem, const Eigen::VectorXd& x);

/// Source obtained by substituting the exact solution into the operator.
/// Identically zero for Allen-Cahn (its equation is homogeneous).
double source_term(const ProblemSpec& problem, const Eigen::VectorXd& x);

/// PDE operator applied to a jet at x (source term included).
double pde_residual(const ProblemSpec& problem, const JetValue& jet, const Eigen::VectorXd& x);

/// Partial derivatives of the residual with respect to the jet components.
struct ResidualLinearization {
  double d_value = 0.0;
  Eigen::VectorXd d_grad;
  Eigen::VectorXd d_hess;
};
ResidualLinearization residual_linearization(const ProblemSpec& problem, const JetValue& jet,
                                             const Eigen::VectorXd& x);

// Hot-path decomposition of the residual, used by the batched loss evaluator:
//   r = dot(grad_coeff(x), grad) + dot(hess_coeff, hess) + value_part(u) - source(x)
// grad_coeff depends on x only for the convection problem; hess_coeff is constant.
Eigen::VectorXd residual_grad_coeff(const ProblemSpec& problem, const Eigen::VectorXd& x);
Eigen::VectorXd residual_hess_coeff(const ProblemSpec& problem);
double residual_value_part(const ProblemSpec& problem, double u);
double residual_value_part_derivative(const ProblemSpec& problem, double u);

struct SamplePoint {
  Eigen::VectorXd coords;
  SampleGroup group = SampleGroup::Residual;
  int boundary_tag = -1;  // face 2*i (low) / 2*i+1 (high) of spatial coordinate i
};

/// Dirichlet datum on the tagged boundary face.
double boundary_value(const ProblemSpec& problem, const SamplePoint& point);
/// u_value minus the Dirichlet datum.
double boundary_residual(const ProblemSpec& problem, double u_value, const SamplePoint& point);

/// Initial datum h(x) at t = 0 (time-dependent problems only).
double initial_value(const ProblemSpec& problem, const Eigen::VectorXd& x);
double initial_residual(const ProblemSpec& problem, double u_value, const Eigen::VectorXd& x);

struct SampleCounts {
  int n_residual = 0;
  int n_initial = 0;
  int n_boundary = 0;
};

struct SampleSet {
  std::vector<SamplePoint> residual;
  std::vector<SamplePoint> initial;
  std::vector<SamplePoint> boundary;
  std::uint64_t seed = 0;

  SampleCounts counts() const {
    return {static_cast<int>(residual.size()), static_cast<int>(initial.size()),
            static_cast<int>(boundary.size())};
  }
  int total() const {
    return static_cast<int>(residual.size() + initial.size() + boundary.size());
  }
};

/// Collocation sampling. Residual points form a uniform interior grid when
/// n_residual is a perfect d-th power (d = input dimension), otherwise they
/// are uniform random in the open domain. Boundary points split evenly
/// across faces (remainder to faces in tag order) and are uniformly spaced
/// along 1-parameter faces, seeded-random on higher-dimensional faces.
SampleSet sample_training_set(const ProblemSpec& problem, const SampleCounts& counts,
                              std::uint64_t seed);

struct TestGrid {
  Eigen::MatrixXd points;  // input_dim x N
  Eigen::VectorXd exact;   // empty when no reference is available
  bool has_exact = false;
};

/// Fixed evaluation grid per problem. Allen-Cahn requires a reference file
/// (plain text, header "# allen_cahn reference", rows "x t u").
TestGrid test_grid(const ProblemSpec& problem, const std::string& reference_path = "");

/// Default Table-style sampling budgets per problem.
SampleCounts default_sample_counts(ProblemName name);

}  // namespace aeh
