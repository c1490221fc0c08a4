#include "opineq/maps.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opineq {
namespace {

int parse_positive_int(const std::string& s, const std::string& id) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 1) throw std::invalid_argument("bad count '" + s + "' in map id '" + id + "'");
  return v;
}

bool unit_diagonal(const ComplexMatrix& C) {
  for (Index i = 0; i < C.rows(); ++i)
    if (std::abs(C(i, i) - std::complex<double>(1.0, 0.0)) > 1e-10) return false;
  return true;
}

}  // namespace

PositiveLinearMap PositiveLinearMap::identity() { return PositiveLinearMap(MapKind::identity); }

PositiveLinearMap PositiveLinearMap::congruence(const ComplexMatrix& K) {
  if (K.size() == 0) throw DimensionMismatch("congruence matrix must be non-empty");
  PositiveLinearMap m(MapKind::congruence);
  m.matrix_ = K;
  return m;
}

PositiveLinearMap PositiveLinearMap::unital_congruence(const ComplexMatrix& K) {
  if (K.size() == 0) throw DimensionMismatch("congruence matrix must be non-empty");
  const ComplexMatrix gram = K.adjoint() * K;
  const double err = (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw std::invalid_argument("unital congruence needs K*K = I (max deviation " + std::to_string(err) + ")");
  PositiveLinearMap m(MapKind::unital_congruence);
  m.matrix_ = K;
  return m;
}

PositiveLinearMap PositiveLinearMap::averaging(int blocks) {
  if (blocks < 1) throw std::invalid_argument("averaging map needs at least one block");
  PositiveLinearMap m(MapKind::averaging);
  m.blocks_ = blocks;
  return m;
}

PositiveLinearMap PositiveLinearMap::pinching(std::vector<int> block_sizes) {
  for (int b : block_sizes)
    if (b < 1) throw std::invalid_argument("pinching block sizes must be positive");
  PositiveLinearMap m(MapKind::pinching);
  m.block_sizes_ = std::move(block_sizes);
  return m;
}

PositiveLinearMap PositiveLinearMap::schur(const ComplexMatrix& C) {
  if (C.rows() != C.cols() || C.rows() == 0) throw DimensionMismatch("Schur multiplier must be square");
  const HermitianMatrix h(C);
  if ((h.matrix() - C).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("Schur multiplier must be Hermitian");
  const double lo = lambda_min(h);
  if (lo < -1e-10 * (1.0 + operator_norm(h))) throw std::invalid_argument("Schur multiplier must be positive semidefinite");
  PositiveLinearMap m(MapKind::schur);
  m.matrix_ = h.matrix();
  return m;
}

PositiveLinearMap PositiveLinearMap::trace_functional(bool normalized) {
  PositiveLinearMap m(MapKind::trace_functional);
  m.normalized_ = normalized;
  return m;
}

PositiveLinearMap PositiveLinearMap::parse(const std::string& id) {
  const auto colon = id.find(':');
  const std::string head = id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;
  if (head == "id" && !has_arg) return identity();
  if (head == "avg") return averaging(has_arg ? parse_positive_int(arg, id) : 2);
  if (head == "pinch") {
    std::vector<int> sizes;
    if (has_arg) {
      std::stringstream ss(arg);
      std::string item;
      while (std::getline(ss, item, ',')) sizes.push_back(parse_positive_int(item, id));
    }
    return pinching(sizes);
  }
  if (head == "trace") {
    if (!has_arg) return trace_functional(true);
    if (arg == "raw") return trace_functional(false);
  }
  if (head == "congr" && has_arg) return congruence(read_matrix_file(arg));
  if (head == "ucongr" && has_arg) return unital_congruence(read_matrix_file(arg));
  if (head == "schur" && has_arg) return schur(read_matrix_file(arg));
  throw std::invalid_argument("unknown map id '" + id + "' (expected id, avg:n, pinch, trace, congr:<file>, schur:<file>)");
}

std::string PositiveLinearMap::id() const {
  switch (kind_) {
    case MapKind::identity: return "id";
    case MapKind::averaging: return "avg:" + std::to_string(blocks_);
    case MapKind::pinching: {
      if (block_sizes_.empty()) return "pinch";
      std::string s = "pinch:";
      for (std::size_t i = 0; i < block_sizes_.size(); ++i) s += (i ? "," : "") + std::to_string(block_sizes_[i]);
      return s;
    }
    case MapKind::trace_functional: return normalized_ ? "trace" : "trace:raw";
    case MapKind::congruence: return "congr";
    case MapKind::unital_congruence: return "ucongr";
    case MapKind::schur: return "schur";
  }
  return "";
}

json PositiveLinearMap::to_json() const {
  json j;
  j["id"] = id();
  if (kind_ == MapKind::congruence || kind_ == MapKind::unital_congruence || kind_ == MapKind::schur)
    j["matrix"] = matrix_to_json(matrix_);
  return j;
}

PositiveLinearMap PositiveLinearMap::from_json(const json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  const std::string id = j.at("id").get<std::string>();
  if (id == "congr") return congruence(complex_matrix_from_json(j.at("matrix")));
  if (id == "ucongr") return unital_congruence(complex_matrix_from_json(j.at("matrix")));
  if (id == "schur") return schur(complex_matrix_from_json(j.at("matrix")));
  return parse(id);
}

bool PositiveLinearMap::is_unital() const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::averaging:
    case MapKind::pinching:
    case MapKind::unital_congruence:
      return true;
    case MapKind::schur: return unit_diagonal(matrix_);
    case MapKind::trace_functional: return normalized_;
    case MapKind::congruence: {
      const ComplexMatrix gram = matrix_.adjoint() * matrix_;
      return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10;
    }
  }
  return false;
}

void PositiveLinearMap::require_unital() const {
  if (!is_unital()) throw std::invalid_argument("map '" + id() + "' is not unital");
}

Index PositiveLinearMap::output_dim(Index n) const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::pinching:
    case MapKind::schur:
      return n;
    case MapKind::averaging: return n / blocks_;
    case MapKind::trace_functional: return 1;
    case MapKind::congruence:
    case MapKind::unital_congruence:
      return matrix_.cols();
  }
  return n;
}

Index PositiveLinearMap::input_dim_for_output(Index m) const {
  switch (kind_) {
    case MapKind::identity:
    case MapKind::pinching:
      return m;
    case MapKind::schur: return matrix_.rows();
    case MapKind::averaging: return m * blocks_;
    case MapKind::trace_functional: return m;
    case MapKind::congruence:
    case MapKind::unital_congruence:
      return matrix_.rows();
  }
  return m;
}

HermitianMatrix PositiveLinearMap::apply(const HermitianMatrix& A) const {
  const Index n = A.dim();
  switch (kind_) {
    case MapKind::identity: return A;
    case MapKind::congruence:
    case MapKind::unital_congruence:
      if (matrix_.rows() != n) throw DimensionMismatch("congruence: K has " + std::to_string(matrix_.rows()) + " rows, input dim " + std::to_string(n));
      return opineq::congruence(matrix_, A);
    case MapKind::averaging: {
      if (n % blocks_ != 0) throw DimensionMismatch("avg:" + std::to_string(blocks_) + " needs an input dim divisible by the block count, got " + std::to_string(n));
      const Index b = n / blocks_;
      ComplexMatrix sum = ComplexMatrix::Zero(b, b);
      for (int k = 0; k < blocks_; ++k) sum += A.matrix().block(k * b, k * b, b, b);
      return HermitianMatrix(sum / static_cast<double>(blocks_));
    }
    case MapKind::pinching: {
      ComplexMatrix out = ComplexMatrix::Zero(n, n);
      if (block_sizes_.empty()) {
        out.diagonal() = A.matrix().diagonal();
      } else {
        const Index total = std::accumulate(block_sizes_.begin(), block_sizes_.end(), Index(0));
        if (total != n) throw DimensionMismatch("pinching blocks sum to " + std::to_string(total) + ", input dim " + std::to_string(n));
        Index at = 0;
        for (int b : block_sizes_) {
          out.block(at, at, b, b) = A.matrix().block(at, at, b, b);
          at += b;
        }
      }
      return HermitianMatrix(out);
    }
    case MapKind::schur:
      if (matrix_.rows() != n) throw DimensionMismatch("schur: multiplier dim differs from input dim");
      return HermitianMatrix(matrix_.cwiseProduct(A.matrix()));
    case MapKind::trace_functional: {
      ComplexMatrix out(1, 1);
      out(0, 0) = A.trace() / (normalized_ ? static_cast<double>(n) : 1.0);
      return HermitianMatrix(out);
    }
  }
  return A;
}

HermitianMatrix apply(const PositiveLinearMap& phi, const HermitianMatrix& A) { return phi.apply(A); }

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

HermitianMatrix kron(const HermitianMatrix& A, const HermitianMatrix& B) { return HermitianMatrix(kron(A.matrix(), B.matrix())); }

HermitianMatrix kron(const std::vector<HermitianMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron of an empty list");
  ComplexMatrix out = factors.front().matrix();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i].matrix());
  return HermitianMatrix(out);
}

HermitianMatrix hadamard(const HermitianMatrix& A, const HermitianMatrix& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("hadamard: dimension mismatch");
  return HermitianMatrix(A.matrix().cwiseProduct(B.matrix()));
}

MultilinearMap::MultilinearMap(int arity, PositiveLinearMap post, std::vector<PositiveLinearMap> slot_maps)
    : arity_(arity), post_(std::move(post)), slot_maps_(std::move(slot_maps)) {
  if (arity_ < 1) throw std::invalid_argument("multilinear map arity must be >= 1");
  if (!slot_maps_.empty() && static_cast<int>(slot_maps_.size()) != arity_)
    throw std::invalid_argument("multilinear map needs one slot map per argument");
}

MultilinearMap MultilinearMap::tensor(int arity) {
  MultilinearMap m(arity, PositiveLinearMap::identity());
  m.id_ = "tensor:" + std::to_string(arity);
  return m;
}

MultilinearMap MultilinearMap::pinched_tensor(int arity) {
  MultilinearMap m(arity, PositiveLinearMap::pinching());
  m.id_ = "pinched-tensor:" + std::to_string(arity);
  return m;
}

MultilinearMap MultilinearMap::hadamard(int arity, Index dim) {
  Index big = 1;
  for (int i = 0; i < arity; ++i) big *= dim;
  // Column i selects the basis vector e_i (x) ... (x) e_i.
  ComplexMatrix S = ComplexMatrix::Zero(big, dim);
  for (Index i = 0; i < dim; ++i) {
    Index pos = 0;
    for (int k = 0; k < arity; ++k) pos = pos * dim + i;
    S(pos, i) = 1.0;
  }
  MultilinearMap m(arity, PositiveLinearMap::unital_congruence(S));
  m.id_ = "hadamard:" + std::to_string(arity);
  return m;
}

MultilinearMap MultilinearMap::product(std::vector<PositiveLinearMap> slot_maps) {
  const int k = static_cast<int>(slot_maps.size());
  std::string id = "product:";
  for (int i = 0; i < k; ++i) id += (i ? "," : "") + slot_maps[static_cast<std::size_t>(i)].id();
  MultilinearMap m(k, PositiveLinearMap::identity(), std::move(slot_maps));
  m.id_ = id;
  return m;
}

bool MultilinearMap::is_unital() const {
  for (const auto& s : slot_maps_)
    if (!s.is_unital()) return false;
  return post_.is_unital();
}

HermitianMatrix MultilinearMap::apply(const std::vector<HermitianMatrix>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("multilinear map of arity " + std::to_string(arity_) + " given " + std::to_string(args.size()) + " arguments");
  std::vector<HermitianMatrix> factors;
  factors.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].dim() != args[0].dim()) throw DimensionMismatch("multilinear map arguments must share one dimension");
    factors.push_back(slot_maps_.empty() ? args[i] : slot_maps_[i].apply(args[i]));
  }
  return post_.apply(kron(factors));
}

HermitianMatrix multi_apply(const MultilinearMap& phi, const std::vector<HermitianMatrix>& args) { return phi.apply(args); }

}  // namespace opineq
