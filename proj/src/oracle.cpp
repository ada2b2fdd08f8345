#include "definetti/oracle.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

namespace definetti::oracle {

namespace {

constexpr char kMagic[4] = {'D', 'F', 'T', 'D'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t checked_dense_size(int d, int n) {
  if (n < 1 || d < 1) throw invalid_input("oracle: need n >= 1 and d >= 1");
  const std::uint64_t size = dense_size(d, n);
  if (size > amplitude_budget()) {
    throw resource_error("oracle: d^n = " + std::to_string(size) + " exceeds amplitude budget " +
                         std::to_string(amplitude_budget()));
  }
  return size;
}

void require_matrix_budget(int d, int n) {
  checked_dense_size(d, n);
  if (n > 3 || d > 16) {
    throw resource_error("oracle: d^{2n} matrices are only formed for n <= 3, d <= 16");
  }
}

cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

cvec kron_power(const cvec& v, int n) {
  cvec out = v;
  for (int i = 1; i < n; ++i) {
    cvec next(out.size() * v.size());
    for (Eigen::Index a = 0; a < out.size(); ++a) {
      next.segment(a * v.size(), v.size()) = out[a] * v;
    }
    out.swap(next);
  }
  return out;
}

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  write_u64(os, bits);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& is) {
  const std::uint64_t bits = read_u64(is);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

void write_header(std::ostream& os, std::uint32_t kind, int n, int d, std::uint64_t rows,
                  std::uint64_t cols) {
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, kind);
  write_u32(os, static_cast<std::uint32_t>(n));
  write_u32(os, static_cast<std::uint32_t>(d));
  write_u64(os, rows);
  write_u64(os, cols);
}

struct Header {
  std::uint32_t kind, n, d;
  std::uint64_t rows, cols;
};

Header read_header(std::istream& is, std::uint32_t expected_kind) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw invalid_input("dump: bad magic");
  if (read_u32(is) != kVersion) throw invalid_input("dump: unsupported version");
  Header h;
  h.kind = read_u32(is);
  if (h.kind != expected_kind) throw invalid_input("dump: wrong record kind");
  h.n = read_u32(is);
  h.d = read_u32(is);
  h.rows = read_u64(is);
  h.cols = read_u64(is);
  return h;
}

}  // namespace

DenseState tensor_power(const fock::FockVector& v, int n) {
  const std::uint64_t size = checked_dense_size(v.dim, n);
  DenseState s;
  s.n = n;
  s.d = v.dim;
  s.amps = kron_power(v.amps, n);
  (void)size;
  return s;
}

DenseState state_from_weights(const weights::CoherentPowerState& psi, int d) {
  if (d <= psi.w_max) throw invalid_input("state_from_weights: need d > w_max");
  const std::uint64_t size = checked_dense_size(d, psi.n);
  DenseState s;
  s.n = psi.n;
  s.d = d;
  s.amps = cvec::Zero(static_cast<Eigen::Index>(size));
  for (int w = 0; w <= psi.w_max; ++w) {
    s.amps += psi.c[w] * weights::weight_state_dense(psi.n, w, d).cast<cplx>();
  }
  return s;
}

DenseOperator outer(const DenseState& s) {
  require_matrix_budget(s.d, s.n);
  DenseOperator op;
  op.n = s.n;
  op.d = s.d;
  op.mat = s.amps * s.amps.adjoint();
  op.hermitian = true;
  return op;
}

DenseOperator partial_trace(const DenseOperator& rho, int k) {
  if (k < 1 || k >= rho.n) throw invalid_input("partial_trace: need 1 <= k < n");
  const Eigen::Index dk = static_cast<Eigen::Index>(dense_size(rho.d, k));
  const Eigen::Index dm = static_cast<Eigen::Index>(dense_size(rho.d, rho.n - k));
  if (rho.mat.rows() != dk * dm) throw invalid_input("partial_trace: inconsistent dimensions");
  DenseOperator out;
  out.n = k;
  out.d = rho.d;
  out.hermitian = rho.hermitian;
  out.mat = cmat::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (Eigen::Index e = 0; e < dm; ++e) acc += rho.mat(a * dm + e, b * dm + e);
      out.mat(a, b) = acc;
    }
  }
  return out;
}

cmat lambda_block(int n, int k, int d, const quad::PhaseSpaceGrid& grid) {
  if (k < 0 || k >= n) throw invalid_input("lambda_block: need 0 <= k < n");
  const int m = n - k;
  const Eigen::Index dm = static_cast<Eigen::Index>(checked_dense_size(d, m));
  if (dm * dm > static_cast<Eigen::Index>(amplitude_budget())) {
    throw resource_error("lambda_block: d^{2(n-k)} exceeds amplitude budget");
  }
  const double scale = m / std::numbers::pi;
  return blocked_accumulate<cmat>(
      grid.size(), cmat::Zero(dm, dm),
      [&](cmat& acc, std::size_t i) {
        const cvec u = kron_power(fock::coherent_amplitudes(grid.nodes[i], d).amps, m);
        acc.noalias() += (scale * grid.weights[i]) * (u * u.adjoint());
      },
      [](cmat& acc, const cmat& x) { acc += x; });
}

DenseOperator lambda_dense(int n, int k, int d, const quad::PhaseSpaceGrid& grid) {
  require_matrix_budget(d, n);
  const cmat block = lambda_block(n, k, d, grid);
  const Eigen::Index dk = static_cast<Eigen::Index>(dense_size(d, k));
  DenseOperator op;
  op.n = n;
  op.d = d;
  op.mat = kron(cmat::Identity(dk, dk), block);
  op.hermitian = true;
  return op;
}

DenseState lambda_apply(int n, int k, int d, const quad::PhaseSpaceGrid& grid,
                        const DenseState& psi) {
  if (psi.n != n || psi.d != d) throw invalid_input("lambda_apply: state shape mismatch");
  const Eigen::Index dk = static_cast<Eigen::Index>(dense_size(d, k));
  const Eigen::Index dm = static_cast<Eigen::Index>(dense_size(d, n - k));
  const cmat block = lambda_block(n, k, d, grid);
  DenseState out;
  out.n = n;
  out.d = d;
  out.amps = cvec(psi.amps.size());
  using CMap = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using Map = Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  CMap vin(psi.amps.data(), dk, dm);
  Map vout(out.amps.data(), dk, dm);
  vout = vin * block.transpose();  // row a <- M . vin_row_a
  return out;
}

DenseState apply_modewise(const cmat& op, const DenseState& psi) {
  if (op.rows() != psi.d || op.cols() != psi.d) throw invalid_input("apply_modewise: shape mismatch");
  DenseState out = psi;
  const Eigen::Index d = psi.d;
  for (int mode = 0; mode < psi.n; ++mode) {
    // Modes to the left of `mode` index rows of size (stride * d); apply op
    // along the mode axis.
    const Eigen::Index right = static_cast<Eigen::Index>(dense_size(psi.d, psi.n - 1 - mode));
    const Eigen::Index left = out.amps.size() / (right * d);
    cvec next(out.amps.size());
    for (Eigen::Index l = 0; l < left; ++l) {
      using CMap = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
      using Map = Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
      CMap blk(out.amps.data() + l * d * right, d, right);
      Map nblk(next.data() + l * d * right, d, right);
      nblk = op * blk;
    }
    out.amps.swap(next);
  }
  return out;
}

double commutator_check(int n, int k, cplx alpha, int d, const quad::PhaseSpaceGrid& grid) {
  if (k < 0 || k >= n) throw invalid_input("commutator_check: need 0 <= k < n");
  checked_dense_size(d, n);
  const cmat dsp = fock::displacement_matrix(alpha, d).entries;
  DenseState vac;
  vac.n = n;
  vac.d = d;
  vac.amps = cvec::Zero(static_cast<Eigen::Index>(dense_size(d, n)));
  vac.amps[0] = 1.0;
  const DenseState dv = apply_modewise(dsp, vac);
  const DenseState ldv = lambda_apply(n, k, d, grid, dv);
  const DenseState lv = lambda_apply(n, k, d, grid, vac);
  const DenseState dlv = apply_modewise(dsp, lv);
  return (ldv.amps - dlv.amps).cwiseAbs().maxCoeff();
}

double commutator_matrix_residual(int n, int k, cplx alpha, int d,
                                  const quad::PhaseSpaceGrid& grid) {
  require_matrix_budget(d, n);
  const DenseOperator lam = lambda_dense(n, k, d, grid);
  const cmat d1 = fock::displacement_matrix(alpha, d).entries;
  cmat dn = d1;
  for (int i = 1; i < n; ++i) dn = kron(dn, d1);
  const cmat comm = lam.mat * dn - dn * lam.mat;
  return comm.cwiseAbs().maxCoeff();
}

cmat embed_weight_operator(const weights::WeightDensityOperator& rho, int d) {
  if (d <= rho.w_max) throw invalid_input("embed_weight_operator: need d > w_max");
  const Eigen::Index dk = static_cast<Eigen::Index>(checked_dense_size(d, rho.k));
  std::vector<cvec> basis(rho.w_max + 1);
  for (int w = 0; w <= rho.w_max; ++w) {
    basis[w] = weights::weight_state_dense(rho.k, w, d).cast<cplx>();
  }
  cmat out = cmat::Zero(dk, dk);
  for (int j = 0; j <= rho.w_max; ++j) {
    for (int jp = 0; jp <= rho.w_max; ++jp) {
      out += rho.mat(j, jp) * (basis[j] * basis[jp].adjoint());
    }
  }
  return out;
}

void dump(const DenseState& s, std::ostream& os) {
  write_header(os, 0, s.n, s.d, static_cast<std::uint64_t>(s.amps.size()), 1);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    write_f64(os, s.amps[i].real());
    write_f64(os, s.amps[i].imag());
  }
}

void dump(const DenseOperator& op, std::ostream& os) {
  write_header(os, 1, op.n, op.d, static_cast<std::uint64_t>(op.mat.rows()),
               static_cast<std::uint64_t>(op.mat.cols()));
  for (Eigen::Index r = 0; r < op.mat.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.mat.cols(); ++c) {
      write_f64(os, op.mat(r, c).real());
      write_f64(os, op.mat(r, c).imag());
    }
  }
}

DenseState load_state(std::istream& is) {
  const Header h = read_header(is, 0);
  DenseState s;
  s.n = static_cast<int>(h.n);
  s.d = static_cast<int>(h.d);
  s.amps = cvec(static_cast<Eigen::Index>(h.rows));
  for (std::uint64_t i = 0; i < h.rows; ++i) {
    const double re = read_f64(is);
    const double im = read_f64(is);
    s.amps[static_cast<Eigen::Index>(i)] = cplx(re, im);
  }
  if (!is) throw invalid_input("dump: truncated state record");
  return s;
}

DenseOperator load_operator(std::istream& is) {
  const Header h = read_header(is, 1);
  DenseOperator op;
  op.n = static_cast<int>(h.n);
  op.d = static_cast<int>(h.d);
  op.mat = cmat(static_cast<Eigen::Index>(h.rows), static_cast<Eigen::Index>(h.cols));
  for (std::uint64_t r = 0; r < h.rows; ++r) {
    for (std::uint64_t c = 0; c < h.cols; ++c) {
      const double re = read_f64(is);
      const double im = read_f64(is);
      op.mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx(re, im);
    }
  }
  if (!is) throw invalid_input("dump: truncated operator record");
  return op;
}

}  // namespace definetti::oracle
