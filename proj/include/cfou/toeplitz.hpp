#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cfou/types.hpp"

namespace cfou::linalg {

struct FftwFree {
  void operator()(cplx* p) const;
};
using AlignedBuffer = std::unique_ptr<cplx[], FftwFree>;
AlignedBuffer make_buffer(std::size_t m);

// Unnormalized complex DFT of fixed length. Planning is serialized behind a
// global lock; execute() is safe to call from many threads as long as the
// buffers come from make_buffer().
class Dft {
 public:
  enum class Sign { Forward, Backward };
  Dft(std::size_t m, Sign sign);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::size_t size() const { return m_; }
  void execute(cplx* in, cplx* out) const;

 private:
  std::size_t m_;
  void* plan_;
};

// Eigenvalues of the symmetric circulant matrix with first column c.
std::vector<double> circulant_eigenvalues(std::span<const double> c);

// First column of the 2n circulant embedding of a symmetric Toeplitz matrix
// given by acov[0..n].
std::vector<double> circulant_embedding(std::span<const double> acov, std::size_t n);

// y = A x for the n x n symmetric Toeplitz A with first column acov[0..n-1],
// applied via a 2n circulant embedding.
class SymmetricToeplitz {
 public:
  explicit SymmetricToeplitz(std::vector<double> first_column);

  std::size_t size() const { return n_; }
  double entry(std::size_t i, std::size_t j) const { return col_[i > j ? i - j : j - i]; }
  const std::vector<double>& first_column() const { return col_; }
  void apply(std::span<const cplx> x, std::span<cplx> y) const;

 private:
  std::size_t n_, m_;
  std::vector<double> col_;
  std::vector<double> eig_;
  std::unique_ptr<Dft> fwd_, bwd_;
};

}  // namespace cfou::linalg
