#include "jsr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jsr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::One: return "one";
    case NormKind::Inf: return "inf";
    case NormKind::Two: return "two";
  }
  return "?";
}

bool parse_norm_kind(std::string_view text, NormKind& out) {
  if (text == "one") { out = NormKind::One; return true; }
  if (text == "inf") { out = NormKind::Inf; return true; }
  if (text == "two") { out = NormKind::Two; return true; }
  return false;
}

Matrix::Matrix(int d, Field field) : d_(d), field_(field) {
  if (d < 2 || d > 16) throw std::invalid_argument("matrix dimension must be in [2, 16]");
  e_.assign(static_cast<std::size_t>(d) * d, cx(0.0, 0.0));
}

Matrix Matrix::identity(int d, Field field) {
  Matrix m(d, field);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<cx>>& rows) {
  const int d = static_cast<int>(rows.size());
  Matrix m(d, field);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw std::invalid_argument("matrix rows must all have length d");
    for (int j = 0; j < d; ++j) {
      cx v = rows[i][j];
      if (!finite(v)) throw std::invalid_argument("matrix entries must be finite");
      if (field == Field::Real && v.imag() != 0.0)
        throw std::invalid_argument("real matrix has nonzero imaginary entry");
      m(i, j) = v;
    }
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const cx& v : e_)
    if (v != cx(0.0, 0.0)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const cx& v : e_) m = std::max({m, std::abs(v.real()), std::abs(v.imag())});
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(d_, field_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(d_, field_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

void Matrix::scale_pow2(int e) {
  for (cx& v : e_) v = cx(std::ldexp(v.real(), e), std::ldexp(v.imag(), e));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const int d = a.d_;
  if (b.d_ != d) throw std::invalid_argument("dimension mismatch in matrix product");
  Field f = (a.field_ == Field::Complex || b.field_ == Field::Complex) ? Field::Complex : Field::Real;
  Matrix r(d, f);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      const cx av = a(i, l);
      if (av == cx(0.0, 0.0)) continue;
      for (int j = 0; j < d; ++j) r(i, j) += av * b(l, j);
    }
  return r;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix r = a;
  for (int i = 0; i < r.d_; ++i)
    for (int j = 0; j < r.d_; ++j) r(i, j) *= s;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("dimension mismatch");
  Matrix r = a;
  for (int i = 0; i < r.d_; ++i)
    for (int j = 0; j < r.d_; ++j) r(i, j) += b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("dimension mismatch");
  Matrix r = a;
  for (int i = 0; i < r.d_; ++i)
    for (int j = 0; j < r.d_; ++j) r(i, j) -= b(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return d_ == o.d_ && field_ == o.field_ && e_ == o.e_;
}

namespace {

// Eigenvalues of [[a,b],[c,d]] by the stable quadratic formula: the root of
// larger magnitude is taken first, the other comes from the product.
std::pair<cx, cx> eig2(cx a, cx b, cx c, cx d) {
  const cx tr = a + d;
  const cx det = a * d - b * c;
  const cx disc = std::sqrt(tr * tr - 4.0 * det);
  const cx s = (std::norm(tr + disc) >= std::norm(tr - disc)) ? tr + disc : tr - disc;
  const cx l1 = 0.5 * s;
  const cx l2 = (l1 != cx(0.0, 0.0)) ? det / l1 : cx(0.0, 0.0);
  return {l1, l2};
}

// Complex Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0 such
// that G * [a; b] has a zero second component.
void givens(cx a, cx b, double& c, cx& s) {
  const double aa = std::abs(a);
  const double ab = std::abs(b);
  if (ab == 0.0) { c = 1.0; s = cx(0.0, 0.0); return; }
  if (aa == 0.0) { c = 0.0; s = std::conj(b) / ab; return; }
  const double n2 = std::hypot(aa, ab);
  const cx phase = a / aa;
  c = aa / n2;
  s = phase * std::conj(b) / n2;
}

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(std::vector<cx>& h, int n) {
  auto at = [&](int i, int j) -> cx& { return h[static_cast<std::size_t>(i) * n + j]; };
  std::vector<cx> v(n);
  for (int j = 0; j + 2 < n; ++j) {
    double colnorm = 0.0;
    for (int i = j + 1; i < n; ++i) colnorm += std::norm(at(i, j));
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;
    const cx alpha = at(j + 1, j);
    const double aa = std::abs(alpha);
    const cx phase = (aa > 0.0) ? alpha / aa : cx(1.0, 0.0);
    const cx beta = -phase * colnorm;
    // v = x - beta*e1, normalized
    double vnorm = 0.0;
    for (int i = j + 1; i < n; ++i) {
      v[i] = at(i, j) - ((i == j + 1) ? beta : cx(0.0, 0.0));
      vnorm += std::norm(v[i]);
    }
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (int i = j + 1; i < n; ++i) v[i] /= vnorm;
    // A <- P A with P = I - 2 v v^H  (rows j+1..n-1)
    for (int col = j; col < n; ++col) {
      cx dot(0.0, 0.0);
      for (int i = j + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, col);
      dot *= 2.0;
      for (int i = j + 1; i < n; ++i) at(i, col) -= dot * v[i];
    }
    // A <- A P  (columns j+1..n-1)
    for (int row = 0; row < n; ++row) {
      cx dot(0.0, 0.0);
      for (int i = j + 1; i < n; ++i) dot += at(row, i) * v[i];
      dot *= 2.0;
      for (int i = j + 1; i < n; ++i) at(row, i) -= dot * std::conj(v[i]);
    }
    at(j + 1, j) = beta;
    for (int i = j + 2; i < n; ++i) at(i, j) = cx(0.0, 0.0);
  }
}

// Shifted QR iteration on an upper Hessenberg matrix.  Wilkinson shifts with
// an exceptional shift when a block stalls.  Returns false when the total
// iteration cap is hit.
bool qr_eigenvalues(std::vector<cx> h, int n, std::vector<cx>& w) {
  auto at = [&](int i, int j) -> cx& { return h[static_cast<std::size_t>(i) * n + j]; };
  w.assign(n, cx(0.0, 0.0));

  double hnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double rs = 0.0;
    for (int j = 0; j < n; ++j) rs += std::abs(at(i, j));
    hnorm = std::max(hnorm, rs);
  }
  if (hnorm == 0.0) return true;  // zero matrix

  const int cap = 100 * n * n;
  int total_iter = 0;
  int stall = 0;
  int hi = n - 1;
  std::vector<double> cs(n);
  std::vector<cx> sn(n);

  while (hi >= 0) {
    if (hi == 0) { w[0] = at(0, 0); break; }
    // zero negligible subdiagonals
    for (int i = 1; i <= hi; ++i) {
      double tst = std::abs(at(i - 1, i - 1)) + std::abs(at(i, i));
      if (tst == 0.0) tst = hnorm;
      if (std::abs(at(i, i - 1)) <= kEps * tst) at(i, i - 1) = cx(0.0, 0.0);
    }
    if (at(hi, hi - 1) == cx(0.0, 0.0)) {
      w[hi] = at(hi, hi);
      --hi;
      stall = 0;
      continue;
    }
    if (hi == 1 || at(hi - 1, hi - 2) == cx(0.0, 0.0)) {
      auto [l1, l2] = eig2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi));
      w[hi - 1] = l1;
      w[hi] = l2;
      hi -= 2;
      stall = 0;
      continue;
    }
    if (total_iter >= cap) return false;
    ++total_iter;
    ++stall;

    int lo = 0;
    for (int i = hi; i >= 1; --i)
      if (at(i, i - 1) == cx(0.0, 0.0)) { lo = i; break; }

    cx mu;
    if (stall > 0 && stall % 10 == 0) {
      mu = at(hi, hi) + 0.75 * std::abs(at(hi, hi - 1));  // exceptional shift
    } else {
      auto [l1, l2] = eig2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi));
      mu = (std::abs(l1 - at(hi, hi)) <= std::abs(l2 - at(hi, hi))) ? l1 : l2;
    }

    // explicit shifted QR sweep on the window [lo, hi]
    for (int i = lo; i <= hi; ++i) at(i, i) -= mu;
    for (int k = lo; k < hi; ++k) {
      double c;
      cx s;
      givens(at(k, k), at(k + 1, k), c, s);
      cs[k] = c;
      sn[k] = s;
      for (int j = k; j <= hi; ++j) {
        const cx t1 = at(k, j), t2 = at(k + 1, j);
        at(k, j) = c * t1 + s * t2;
        at(k + 1, j) = -std::conj(s) * t1 + c * t2;
      }
      at(k + 1, k) = cx(0.0, 0.0);
    }
    for (int k = lo; k < hi; ++k) {
      const double c = cs[k];
      const cx s = sn[k];
      for (int i = lo; i <= k + 1; ++i) {
        const cx t1 = at(i, k), t2 = at(i, k + 1);
        at(i, k) = c * t1 + std::conj(s) * t2;
        at(i, k + 1) = -s * t1 + c * t2;
      }
    }
    for (int i = lo; i <= hi; ++i) at(i, i) += mu;
  }
  return true;
}

// Characteristic polynomial by the Faddeev-LeVerrier recurrence:
// p(x) = x^d + c[1] x^{d-1} + ... + c[d].
std::vector<cx> char_poly(const Matrix& a) {
  const int d = a.dim();
  std::vector<cx> c(d + 1, cx(0.0, 0.0));
  c[0] = 1.0;
  Matrix m = Matrix::identity(d, a.field());
  for (int k = 1; k <= d; ++k) {
    Matrix am = a * m;
    cx tr(0.0, 0.0);
    for (int i = 0; i < d; ++i) tr += am(i, i);
    c[k] = -tr / static_cast<double>(k);
    m = am;
    for (int i = 0; i < d; ++i) m(i, i) += c[k];
  }
  return c;
}

// Durand-Kerner simultaneous root iteration for a monic polynomial.
bool durand_kerner(const std::vector<cx>& c, std::vector<cx>& roots) {
  const int d = static_cast<int>(c.size()) - 1;
  double radius = 0.0;
  for (int k = 1; k <= d; ++k) radius = std::max(radius, std::abs(c[k]));
  radius = 1.0 + radius;  // Cauchy bound
  roots.assign(d, cx(0.0, 0.0));
  const cx seed(0.4, 0.9);
  cx z(1.0, 0.0);
  for (int i = 0; i < d; ++i) {
    z *= seed;
    roots[i] = radius * z;
  }
  auto eval = [&](cx x) {
    cx p = c[0];
    for (int k = 1; k <= d; ++k) p = p * x + c[k];
    return p;
  };
  for (int it = 0; it < 1000; ++it) {
    double delta = 0.0;
    for (int i = 0; i < d; ++i) {
      cx denom(1.0, 0.0);
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == cx(0.0, 0.0)) denom = cx(kEps, kEps);
      const cx step = eval(roots[i]) / denom;
      roots[i] -= step;
      delta = std::max(delta, std::abs(step) / std::max(1.0, std::abs(roots[i])));
    }
    if (delta < 1e-14) return true;
  }
  return false;
}

void sort_spectrum(std::vector<cx>& ev) {
  std::sort(ev.begin(), ev.end(), [](cx a, cx b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

}  // namespace

Spectrum eigenvalues(const Matrix& a) {
  const int d = a.dim();
  Spectrum sp;

  // Uniform power-of-two prescale keeps the iteration well inside the
  // exponent range; eigenvalues are rescaled exactly afterwards.
  int esc = 0;
  Matrix work = a;
  const double ma = a.max_abs();
  if (ma > 0.0) {
    esc = std::ilogb(ma);
    if (esc != 0) work.scale_pow2(-esc);
  }

  std::vector<cx> ev;
  if (d == 2) {
    auto [l1, l2] = eig2(work(0, 0), work(0, 1), work(1, 0), work(1, 1));
    ev = {l1, l2};
  } else {
    std::vector<cx> h(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) h[static_cast<std::size_t>(i) * d + j] = work(i, j);
    hessenberg(h, d);
    if (!qr_eigenvalues(std::move(h), d, ev)) {
      // QR stalled; fall back to characteristic-polynomial roots.
      if (!durand_kerner(char_poly(work), ev))
        throw NumericFailure("eigenvalue iteration failed to converge", a);
    }
  }

  if (esc != 0)
    for (cx& l : ev) l = cx(std::ldexp(l.real(), esc), std::ldexp(l.imag(), esc));
  sort_spectrum(ev);

  sp.eigenvalues = std::move(ev);
  sp.rho = std::abs(sp.eigenvalues.front());
  sp.min_modulus = std::abs(sp.eigenvalues.back());
  return sp;
}

double spectral_radius(const Matrix& a) { return eigenvalues(a).rho; }

namespace {

cx cofactor_det(const Matrix& a, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return a(rows[0], cols[0]);
  cx sum(0.0, 0.0);
  const int r0 = rows[0];
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  double sign = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cx piv = a(r0, cols[j]);
    if (piv != cx(0.0, 0.0)) {
      std::vector<int> sub_cols;
      sub_cols.reserve(n - 1);
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) sub_cols.push_back(cols[l]);
      sum += sign * piv * cofactor_det(a, sub_rows, sub_cols);
    }
    sign = -sign;
  }
  return sum;
}

cx lu_det(Matrix a) {
  const int d = a.dim();
  cx det(1.0, 0.0);
  for (int k = 0; k < d; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); piv = i; }
    if (best == 0.0) return cx(0.0, 0.0);
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < d; ++i) {
      const cx f = a(i, k) / a(k, k);
      for (int j = k + 1; j < d; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace

cx determinant(const Matrix& a) {
  const int d = a.dim();
  if (d <= 4) {
    std::vector<int> rows(d), cols(d);
    for (int i = 0; i < d; ++i) rows[i] = cols[i] = i;
    return cofactor_det(a, rows, cols);
  }
  return lu_det(a);
}

// One-sided Jacobi: orthogonalize the columns; their norms converge to the
// singular values.  Unlike forming A^H A outright, this keeps high relative
// accuracy for the small singular values, which the rank and residual
// diagnostics depend on.  The rotations implicitly diagonalize the Gram
// matrix A^H A.
std::vector<double> singular_values(const Matrix& a) {
  const int d = a.dim();
  std::vector<cx> col(static_cast<std::size_t>(d) * d);  // column-major work copy
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(j) * d + i] = a(i, j);
  auto cptr = [&](int j) { return col.data() + static_cast<std::size_t>(j) * d; };

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        cx* ap = cptr(p);
        cx* aq = cptr(q);
        double app = 0.0, aqq = 0.0;
        cx apq(0.0, 0.0);
        for (int i = 0; i < d; ++i) {
          app += std::norm(ap[i]);
          aqq += std::norm(aq[i]);
          apq += ap[i] * std::conj(aq[i]);
        }
        const double r = std::abs(apq);
        if (r <= kEps * std::sqrt(app * aqq) || r == 0.0) continue;
        rotated = true;
        const cx phase = apq / r;  // absorb into column q; norms are unchanged
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (int i = 0; i < d; ++i) {
          const cx vp = ap[i];
          const cx vq = phase * aq[i];
          ap[i] = c * vp - s * vq;
          aq[i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(d);
  for (int j = 0; j < d; ++j) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::norm(cptr(j)[i]);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

double induced_norm(const Matrix& a, NormKind kind) {
  const int d = a.dim();
  double m = 0.0;
  switch (kind) {
    case NormKind::One:
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += std::abs(a(i, j));
        m = std::max(m, s);
      }
      return m;
    case NormKind::Inf:
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += std::abs(a(i, j));
        m = std::max(m, s);
      }
      return m;
    case NormKind::Two:
      return singular_values(a).front();
  }
  return m;
}

}  // namespace jsr
