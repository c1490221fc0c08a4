#ifndef OPINEQ_MAPS_HPP
#define OPINEQ_MAPS_HPP

// Positive linear and multilinear maps, described by kind rather than as
// dense super-operators.

#include <string>
#include <vector>

#include "opineq/io.hpp"
#include "opineq/matcore.hpp"

namespace opineq {

enum class MapKind { identity, congruence, unital_congruence, averaging, pinching, schur, trace_functional };

class PositiveLinearMap {
 public:
  static PositiveLinearMap identity();
  /// A -> K* A K for any K (rows = input dim, cols = output dim).
  static PositiveLinearMap congruence(const ComplexMatrix& K);
  /// As congruence, but rejects K unless K*K = I within 1e-10.
  static PositiveLinearMap unital_congruence(const ComplexMatrix& K);
  /// A_1 (+) ... (+) A_n -> (A_1 + ... + A_n)/n, reading the n diagonal blocks of the input.
  static PositiveLinearMap averaging(int blocks = 2);
  /// Keeps the diagonal blocks of the given sizes; empty sizes means the full diagonal.
  static PositiveLinearMap pinching(std::vector<int> block_sizes = {});
  /// A -> C o A for a positive semidefinite C.
  static PositiveLinearMap schur(const ComplexMatrix& C);
  /// A -> [Tr A] (or [Tr A / n] when normalized), a 1x1 output.
  static PositiveLinearMap trace_functional(bool normalized = true);

  /// "id", "avg:n", "pinch", "pinch:b1,b2,..", "trace", "trace:raw", "congr:<file>",
  /// "ucongr:<file>", "schur:<file>".
  static PositiveLinearMap parse(const std::string& id);

  MapKind kind() const { return kind_; }
  int blocks() const { return blocks_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  std::string id() const;
  json to_json() const;
  static PositiveLinearMap from_json(const json& j);

  bool is_unital() const;
  /// Throws std::invalid_argument when the map is not unital.
  void require_unital() const;

  Index output_dim(Index input_dim) const;
  /// Input dimension needed to land in the given output dimension.
  Index input_dim_for_output(Index output_dim) const;

  HermitianMatrix apply(const HermitianMatrix& A) const;
  HermitianMatrix operator()(const HermitianMatrix& A) const { return apply(A); }

 private:
  explicit PositiveLinearMap(MapKind kind) : kind_(kind) {}

  MapKind kind_;
  ComplexMatrix matrix_;
  int blocks_ = 1;
  std::vector<int> block_sizes_;
  bool normalized_ = true;
};

HermitianMatrix apply(const PositiveLinearMap& phi, const HermitianMatrix& A);

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);
HermitianMatrix kron(const HermitianMatrix& A, const HermitianMatrix& B);
HermitianMatrix kron(const std::vector<HermitianMatrix>& factors);
HermitianMatrix hadamard(const HermitianMatrix& A, const HermitianMatrix& B);

/// (A_1, ..., A_k) -> Psi(Phi_1(A_1) (x) ... (x) Phi_k(A_k)); the slot maps default to the identity.
class MultilinearMap {
 public:
  MultilinearMap(int arity, PositiveLinearMap post, std::vector<PositiveLinearMap> slot_maps = {});

  static MultilinearMap tensor(int arity);
  /// Tensor product followed by the diagonal pinching.
  static MultilinearMap pinched_tensor(int arity);
  /// A_1 o ... o A_k as a unital congruence of the tensor product by the diagonal selector.
  static MultilinearMap hadamard(int arity, Index dim);
  /// Phi_1(A_1) (x) ... (x) Phi_k(A_k).
  static MultilinearMap product(std::vector<PositiveLinearMap> slot_maps);

  int arity() const { return arity_; }
  const PositiveLinearMap& post_map() const { return post_; }
  std::string id() const { return id_; }
  bool is_unital() const;

  HermitianMatrix apply(const std::vector<HermitianMatrix>& args) const;
  HermitianMatrix operator()(const std::vector<HermitianMatrix>& args) const { return apply(args); }

 private:
  int arity_;
  PositiveLinearMap post_;
  std::vector<PositiveLinearMap> slot_maps_;
  std::string id_ = "custom";
};

HermitianMatrix multi_apply(const MultilinearMap& phi, const std::vector<HermitianMatrix>& args);

}  // namespace opineq

#endif  // OPINEQ_MAPS_HPP
