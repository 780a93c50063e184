#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cogrowth/automaton.hpp"

namespace cogrowth {

enum class OrderingKind { OSE, NSE };

/// An enumeration of the states of an automaton.
struct StateOrdering {
  std::vector<State> states;
  OrderingKind kind = OrderingKind::OSE;
  /// Number of leading non-S states (NSE); equals states.size() for OSE.
  std::size_t boundary = 0;

  std::size_t size() const { return states.size(); }
  /// Position of a state, throws Precondition if absent.
  std::size_t position(const State& s) const;
};

/// States sorted by (vertex id, letter).
StateOrdering make_ose(const Automaton& b);

/// New state enumeration relative to S: the non-S states ordered by
/// (vertex after renaming o(e) -> t(e), letter), which groups the states at
/// o(e) and t(e) and orders them by their letter; then the S states in the
/// order of `s.states`. The non-S block, renamed, is the OSE of the
/// collapsed automaton.
StateOrdering make_nse(const Automaton& b, const SStateSet& s);

/// Square 0/1 matrix with rows and columns indexed by an ordering.
struct AdjacencyMatrix {
  Eigen::MatrixXi entries;
  StateOrdering ordering;

  Eigen::Index size() const { return entries.rows(); }
};

/// Entry (p, q) = 1 iff p -> q is a transition. Throws Precondition unless
/// the ordering lists exactly the states of b.
AdjacencyMatrix adjacency(const Automaton& b, const StateOrdering& ordering);

struct BlockDecomposition {
  Eigen::MatrixXi m_prime;  ///< |Q| x |Q|
  Eigen::MatrixXi u;        ///< |Q| x |S|
  Eigen::MatrixXi z;        ///< |S| x |Q|
  Eigen::MatrixXi o;        ///< |S| x |S|
};

/// Splits an NSE-ordered matrix at the S boundary and checks that every row
/// of U has at most one 1 and that O is zero (DecompositionViolation
/// otherwise).
BlockDecomposition decompose(const AdjacencyMatrix& m, const SStateSet& s);

/// For each S-state: add its row to every predecessor row, then drop its row
/// and column. The result is ordered by the renamed non-S block (the OSE of
/// the collapsed automaton). Throws EntryOverflow if an entry exceeds 1 and
/// Precondition for a non-NSE input or empty S.
AdjacencyMatrix derive_m1(const AdjacencyMatrix& m, const SStateSet& s);

/// Positions (row, column) in the |Q| x |Q| block where M' < M_1 must hold
/// strictly: rows o(e_i), columns t(eps_j), per S-state. Indices refer to
/// the non-S block of the NSE.
std::vector<std::pair<Eigen::Index, Eigen::Index>> strict_positions(const StateOrdering& nse,
                                                                    const SStateSet& s);

struct PowerIterationOptions {
  double tolerance = 1e-10;       ///< required residual
  long max_iterations = 1000000;
};

struct PFResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;  ///< strictly positive, unit Euclidean norm
  long iterations = 0;
  double residual = 0.0;        ///< ||M v - lambda v||_inf
};

/// Perron-Frobenius eigenpair of an irreducible non-negative matrix by power
/// iteration on M + I (aperiodic even when M is periodic) from the all-ones
/// vector; the shift is removed from the eigenvalue.
/// Throws ConvergenceFailure when the residual is not reached and Precondition
/// for a reducible or negative matrix.
PFResult pf_eigen(const Eigen::MatrixXd& m, const PowerIterationOptions& options = {});
PFResult pf_eigen(const AdjacencyMatrix& m, const PowerIterationOptions& options = {});

/// Which value the certificate assigns to each S entry of u, with
/// b = b_(q,a) and lambda_1 the eigenvalue of M_1:
///   BelowBound: u = b / lambda_1 (strict slack on the o(e_i) rows)
///   AtBound:    u = b            (strict slack on the S rows)
///   Midpoint:   u = (b / lambda_1 + b) / 2 (strict slack on both)
enum class UChoice { BelowBound = 1, AtBound = 2, Midpoint = 3 };

struct CertificateOptions {
  UChoice choice = UChoice::Midpoint;
  /// Explicit S-entry values (by position in the S block); when set they
  /// override `choice` and must lie strictly inside (b/lambda_1, b).
  std::optional<std::vector<double>> values;
  double slack = 1e-9;        ///< minimum strict slack on designated rows
  double tolerance = 1e-9;    ///< allowed excess (Mu)_j - lambda_1 u_j elsewhere
};

struct SBound {
  State state;
  double b = 0.0;      ///< (M u)_(q,a) over the non-S columns
  double lower = 0.0;  ///< b / lambda_1
  double upper = 0.0;  ///< b
  double value = 0.0;  ///< chosen u_(q,a)
};

struct InequalityCertificate {
  double lambda1 = 0.0;
  Eigen::VectorXd u;       ///< NSE-indexed, strictly positive
  Eigen::VectorXd mu;      ///< M u
  Eigen::VectorXd gap;     ///< lambda_1 u - M u
  std::vector<Eigen::Index> strict_rows;      ///< gap >= slack
  std::vector<Eigen::Index> designated_rows;  ///< rows the chosen u must make strict
  std::vector<SBound> s_bounds;
  UChoice choice = UChoice::Midpoint;
};

/// Extends the M_1 eigenvector to u over Q_H and checks (M u)_j <= lambda_1
/// u_j for all j, strictly on the designated rows, which by Perron-Frobenius
/// proves lambda < lambda_1. Throws CertificateFailure naming the violating
/// row.
InequalityCertificate certify_inequality(const AdjacencyMatrix& m, const AdjacencyMatrix& m1,
                                         const SStateSet& s, const PFResult& pf1,
                                         const CertificateOptions& options = {});

struct Cogrowth {
  double alpha = 0.0;    ///< Perron-Frobenius eigenvalue
  double entropy = 0.0;  ///< log alpha
};

Cogrowth cogrowth(const AdjacencyMatrix& m, const PowerIterationOptions& options = {});

}  // namespace cogrowth
