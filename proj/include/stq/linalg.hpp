// Copyright 2026 The spacetime-qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Default tolerance for Hermiticity, trace and completeness checks.
inline constexpr double kTol = 1e-10;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Operand shapes do not match.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

// A parameter lies outside its allowed range.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(message) {}
};

// An input fails a structural precondition (unitarity, Hermiticity, ...).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error(message) {}
};

// Subsystem dimensions of a tensor product space. Index 0 is the leftmost
// tensor factor everywhere in the library.
struct DimensionVector {
  std::vector<int> dims;

  DimensionVector() = default;
  DimensionVector(std::initializer_list<int> d) : dims(d) {}
  explicit DimensionVector(std::vector<int> d) : dims(std::move(d)) {}

  static DimensionVector qubits(int n) {
    return DimensionVector(std::vector<int>(n, 2));
  }
  int size() const { return static_cast<int>(dims.size()); }
  int operator[](int i) const { return dims[i]; }
  long total() const;
};

// One Pauli index per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
struct PauliString {
  std::vector<int> indices;

  PauliString() = default;
  PauliString(std::initializer_list<int> i) : indices(i) {}
  explicit PauliString(std::vector<int> i) : indices(std::move(i)) {}

  int size() const { return static_cast<int>(indices.size()); }
  int operator[](int i) const { return indices[i]; }
  bool is_identity() const;
  // Label such as "XIZ".
  std::string label() const;
  static PauliString from_label(const std::string& s);
};

CMatrix identity(long d);
CMatrix pauli(int index);
CMatrix pauli_operator(const PauliString& p);
// All 4^n Pauli strings on n qubits, ordered with the leftmost qubit slowest.
std::vector<PauliString> all_pauli_strings(int n);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor_all(const std::vector<CMatrix>& factors);

CMatrix partial_trace(
    const CMatrix& m, const DimensionVector& dims, const std::vector<int>& keep);
CMatrix partial_transpose(
    const CMatrix& m, const DimensionVector& dims, int subsystem);
// Reorders tensor factors: output factor k is input factor perm[k].
CMatrix permute_subsystems(
    const CMatrix& m, const DimensionVector& dims, const std::vector<int>& perm);

bool is_hermitian(const CMatrix& m, double tol = kTol);
bool is_unitary(const CMatrix& u, double tol = kTol);
bool is_density_matrix(const CMatrix& rho, double tol = kTol);

// Ascending eigenvalues of a Hermitian matrix.
RVector hermitian_eigenvalues(const CMatrix& m, double tol = kTol);
double min_eigenvalue(const CMatrix& m);
double trace_norm(const CMatrix& m);
double operator_norm(const CMatrix& m);

CMatrix haar_random_unitary(int d, std::uint64_t seed);
// Random density matrix from a Haar-random purification.
CMatrix random_density_matrix(int d, std::uint64_t seed);
CMatrix random_hermitian(int d, std::uint64_t seed);
CVector random_state_vector(int d, std::uint64_t seed);

CMatrix projector(const CVector& v);
CMatrix ket_bra(int d, int i, int j);
CMatrix swap_operator(int d);
// Sum_i |ii><jj|: unnormalized maximally entangled projector.
CMatrix max_entangled_projector(int d);

// Pairwise (cascade) summation of a list of terms, for order-stable results.
CMatrix pairwise_sum(const std::vector<CMatrix>& terms);
double pairwise_sum(const std::vector<double>& terms);

}  // namespace stq
