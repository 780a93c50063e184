#include "cogrowth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "cogrowth/error.hpp"

namespace cogrowth {

std::size_t StateOrdering::position(const State& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  if (it == states.end()) throw Error(ErrorCode::Precondition, "state missing from ordering");
  return static_cast<std::size_t>(it - states.begin());
}

StateOrdering make_ose(const Automaton& b) {
  StateOrdering o;
  o.states.assign(b.states().begin(), b.states().end());
  o.kind = OrderingKind::OSE;
  o.boundary = o.states.size();
  return o;
}

StateOrdering make_nse(const Automaton& b, const SStateSet& s) {
  if (s.empty()) throw Error(ErrorCode::Precondition, "NSE is defined relative to a non-empty S");
  auto renamed = [&](const State& q) {
    auto it = s.rename.find(q.vertex);
    return State{it == s.rename.end() ? q.vertex : it->second, q.letter};
  };
  std::vector<State> rest;
  for (const State& q : b.states()) {
    if (!s.contains(q)) rest.push_back(q);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](const State& x, const State& y) {
    return renamed(x) < renamed(y);
  });
  StateOrdering o;
  o.kind = OrderingKind::NSE;
  o.boundary = rest.size();
  o.states = std::move(rest);
  for (const SState& x : s.states) {
    if (!b.find(x.state)) throw Error(ErrorCode::Precondition, "S-state is not a state of B_H");
    o.states.push_back(x.state);
  }
  return o;
}

AdjacencyMatrix adjacency(const Automaton& b, const StateOrdering& ordering) {
  if (ordering.size() != b.size()) {
    throw Error(ErrorCode::Precondition, "ordering does not cover the automaton's states");
  }
  std::map<State, Eigen::Index> pos;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (!b.find(ordering.states[i]) || !pos.emplace(ordering.states[i], i).second) {
      throw Error(ErrorCode::Precondition, "ordering does not list exactly the automaton's states");
    }
  }
  const auto n = static_cast<Eigen::Index>(b.size());
  AdjacencyMatrix m{Eigen::MatrixXi::Zero(n, n), ordering};
  for (const Transition& t : b.transitions()) m.entries(pos.at(t.from), pos.at(t.to)) = 1;
  return m;
}

namespace {

void require_nse(const AdjacencyMatrix& m, const SStateSet& s) {
  const auto& o = m.ordering;
  if (s.empty()) throw Error(ErrorCode::Precondition, "S must be non-empty");
  if (o.kind != OrderingKind::NSE || o.boundary + s.states.size() != o.size()) {
    throw Error(ErrorCode::Precondition, "matrix is not indexed by the NSE for this S");
  }
  for (std::size_t k = 0; k < s.states.size(); ++k) {
    if (o.states[o.boundary + k] != s.states[k].state) {
      throw Error(ErrorCode::Precondition, "S block of the NSE does not match S");
    }
  }
}

}  // namespace

BlockDecomposition decompose(const AdjacencyMatrix& m, const SStateSet& s) {
  require_nse(m, s);
  const auto q = static_cast<Eigen::Index>(m.ordering.boundary);
  const auto k = m.size() - q;
  BlockDecomposition d{m.entries.topLeftCorner(q, q), m.entries.topRightCorner(q, k),
                       m.entries.bottomLeftCorner(k, q), m.entries.bottomRightCorner(k, k)};
  for (Eigen::Index r = 0; r < q; ++r) {
    if (d.u.row(r).sum() > 1 || d.u.row(r).minCoeff() < 0) {
      throw Error(ErrorCode::DecompositionViolation,
                  "row " + std::to_string(r + 1) + " of U has more than one non-zero entry");
    }
  }
  if (!d.o.isZero()) throw Error(ErrorCode::DecompositionViolation, "block O is not zero");
  return d;
}

AdjacencyMatrix derive_m1(const AdjacencyMatrix& m, const SStateSet& s) {
  require_nse(m, s);
  const auto q = static_cast<Eigen::Index>(m.ordering.boundary);
  Eigen::MatrixXi work = m.entries;
  for (std::size_t k = 0; k < s.states.size(); ++k) {
    const Eigen::Index col = q + static_cast<Eigen::Index>(k);
    for (Eigen::Index r = 0; r < m.size(); ++r) {
      if (work(r, col) == 0) continue;
      if (r >= q) {
        throw Error(ErrorCode::EntryOverflow, "an S-state has an S predecessor");
      }
      work.row(r) += work.row(col);
    }
  }
  AdjacencyMatrix m1;
  m1.entries = work.topLeftCorner(q, q);
  if (m1.entries.size() > 0 && m1.entries.maxCoeff() > 1) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    m1.entries.maxCoeff(&r, &c);
    throw Error(ErrorCode::EntryOverflow,
                "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") exceeds 1");
  }
  m1.ordering.kind = OrderingKind::OSE;
  for (Eigen::Index i = 0; i < q; ++i) {
    State st = m.ordering.states[i];
    if (auto it = s.rename.find(st.vertex); it != s.rename.end()) st.vertex = it->second;
    m1.ordering.states.push_back(st);
  }
  m1.ordering.boundary = m1.ordering.states.size();
  return m1;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> strict_positions(const StateOrdering& nse,
                                                                    const SStateSet& s) {
  std::set<std::pair<Eigen::Index, Eigen::Index>> out;
  for (const SState& x : s.states) {
    for (const State& p : x.predecessors) {
      for (const State& t : x.successors) {
        out.emplace(static_cast<Eigen::Index>(nse.position(p)),
                    static_cast<Eigen::Index>(nse.position(t)));
      }
    }
  }
  return {out.begin(), out.end()};
}

// -------------------------------------------------------- power iteration

namespace {

// Every index reachable from 0 along the rows and along the columns.
bool strongly_connected(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double e = pass == 0 ? m(i, j) : m(j, i);
        if (e > 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          ++count;
          stack.push_back(j);
        }
      }
    }
    if (count != n) return false;
  }
  return true;
}

}  // namespace

PFResult pf_eigen(const Eigen::MatrixXd& m, const PowerIterationOptions& options) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw Error(ErrorCode::Precondition, "pf_eigen needs a square matrix");
  if (m.minCoeff() < 0) throw Error(ErrorCode::Precondition, "pf_eigen needs a non-negative matrix");
  if (!strongly_connected(m)) throw Error(ErrorCode::Precondition, "pf_eigen needs an irreducible matrix");

  const Eigen::SparseMatrix<double> a = m.sparseView();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  PFResult r;
  double best = std::numeric_limits<double>::infinity();
  long since_best = 0;
  for (long it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd av = a * v;
    // One step on M + I.
    v = (av + v).normalized();
    av = a * v;
    const double lambda = v.dot(av);
    const double residual = (av - lambda * v).lpNorm<Eigen::Infinity>();
    r.eigenvalue = lambda;
    r.iterations = it;
    r.residual = residual;
    if (residual < best * 0.999) {
      best = residual;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (residual <= options.tolerance * 1e-3) break;
    if (residual <= options.tolerance && since_best >= 100) break;
  }
  if (!(r.residual <= options.tolerance)) {
    throw Error(ErrorCode::ConvergenceFailure,
                "power iteration stopped at residual " + std::to_string(r.residual) + " after " +
                    std::to_string(r.iterations) + " iterations");
  }
  if (v.minCoeff() <= 0) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Perron vector is not strictly positive (matrix not irreducible?)");
  }
  r.eigenvector = v;
  return r;
}

PFResult pf_eigen(const AdjacencyMatrix& m, const PowerIterationOptions& options) {
  return pf_eigen(Eigen::MatrixXd(m.entries.cast<double>()), options);
}

// ------------------------------------------------------------- certificate

namespace {

[[noreturn]] void certificate_failure(const AdjacencyMatrix& m, Eigen::Index row,
                                      const std::string& what) {
  (void)m;
  throw Error(ErrorCode::CertificateFailure,
              "certificate fails at NSE row " + std::to_string(row + 1) + ": " + what);
}

}  // namespace

InequalityCertificate certify_inequality(const AdjacencyMatrix& m, const AdjacencyMatrix& m1,
                                         const SStateSet& s, const PFResult& pf1,
                                         const CertificateOptions& options) {
  require_nse(m, s);
  const auto q = static_cast<Eigen::Index>(m.ordering.boundary);
  if (m1.size() != q || pf1.eigenvector.size() != q) {
    throw Error(ErrorCode::Precondition, "M_1 and its eigenvector must have |Q| = |Q_H| - |S| rows");
  }
  for (Eigen::Index i = 0; i < q; ++i) {
    State st = m.ordering.states[i];
    if (auto it = s.rename.find(st.vertex); it != s.rename.end()) st.vertex = it->second;
    if (m1.ordering.states[i] != st) {
      throw Error(ErrorCode::Precondition, "M_1 ordering does not match the NSE non-S block");
    }
  }
  const auto k = static_cast<Eigen::Index>(s.states.size());
  if (options.values && static_cast<Eigen::Index>(options.values->size()) != k) {
    throw Error(ErrorCode::Precondition, "explicit certificate values must cover every S-state");
  }

  InequalityCertificate c;
  c.lambda1 = pf1.eigenvalue;
  c.choice = options.choice;
  const Eigen::MatrixXd md = m.entries.cast<double>();
  c.u = Eigen::VectorXd::Zero(q + k);
  c.u.head(q) = pf1.eigenvector;

  std::set<Eigen::Index> designated;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index row = q + j;
    SBound bound;
    bound.state = s.states[j].state;
    bound.b = md.row(row).head(q).dot(c.u.head(q));
    bound.lower = bound.b / c.lambda1;
    bound.upper = bound.b;
    if (!(bound.b > 0)) certificate_failure(m, row, "b_(q,a) is not positive");
    if (options.values) {
      bound.value = (*options.values)[j];
      if (!(bound.value > bound.lower && bound.value < bound.upper)) {
        certificate_failure(m, row,
                            "chosen value " + std::to_string(bound.value) + " outside (" +
                                std::to_string(bound.lower) + ", " + std::to_string(bound.upper) +
                                ")");
      }
    } else {
      switch (options.choice) {
        case UChoice::BelowBound: bound.value = bound.lower; break;
        case UChoice::AtBound: bound.value = bound.upper; break;
        case UChoice::Midpoint: bound.value = 0.5 * (bound.lower + bound.upper); break;
      }
    }
    c.u(row) = bound.value;
    const bool predecessors_strict = options.values || options.choice != UChoice::AtBound;
    const bool self_strict = options.values || options.choice != UChoice::BelowBound;
    if (self_strict) designated.insert(row);
    if (predecessors_strict) {
      for (const State& p : s.states[j].predecessors) {
        designated.insert(static_cast<Eigen::Index>(m.ordering.position(p)));
      }
    }
    c.s_bounds.push_back(bound);
  }
  if (c.u.minCoeff() <= 0) certificate_failure(m, 0, "u is not strictly positive");

  c.mu = md * c.u;
  c.gap = c.lambda1 * c.u - c.mu;
  c.designated_rows.assign(designated.begin(), designated.end());
  for (Eigen::Index j = 0; j < c.gap.size(); ++j) {
    if (c.gap(j) < -options.tolerance) {
      certificate_failure(m, j, "(Mu)_j exceeds lambda_1 u_j by " + std::to_string(-c.gap(j)));
    }
    if (c.gap(j) >= options.slack) c.strict_rows.push_back(j);
  }
  for (Eigen::Index j : c.designated_rows) {
    if (c.gap(j) < options.slack) {
      certificate_failure(m, j, "expected strict slack, got " + std::to_string(c.gap(j)));
    }
  }
  return c;
}

Cogrowth cogrowth(const AdjacencyMatrix& m, const PowerIterationOptions& options) {
  const PFResult pf = pf_eigen(m, options);
  return {pf.eigenvalue, std::log(pf.eigenvalue)};
}

}  // namespace cogrowth
