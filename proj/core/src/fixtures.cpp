#include "ptsim/fixtures.hpp"

#include <cmath>

namespace ptsim {

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix similar(const ComplexMatrix& s, const ComplexMatrix& d) { return s * d * s.inverse(); }

ComplexMatrix diag(std::initializer_list<Complex> entries) {
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (Complex e : entries) v(i++) = e;
  return v.asDiagonal();
}

// For H = S·D·S⁻¹ with D real diagonal, PT = S·conj(S)⁻¹ is an anti-linear
// involution commuting with H.
CorpusEntry from_frame(std::string name, const ComplexMatrix& s, const ComplexMatrix& d) {
  const Eigen::Index n = s.rows();
  return {std::move(name), similar(s, d), identity(n), s * s.conjugate().inverse(), PTKind::UnbrokenPT};
}

CorpusEntry real_entry(std::string name, const ComplexMatrix& h, PTKind kind) {
  return {std::move(name), h, identity(h.rows()), identity(h.rows()), kind};
}

CorpusEntry sigma_x_entry(std::string name, const ComplexMatrix& h, PTKind kind) {
  return {std::move(name), h, sigma_x(), identity(2), kind};
}

ComplexMatrix real_frame3() {
  ComplexMatrix s(3, 3);
  s << 1, 2, 0, 0, 1, -1, 1, 0, 3;
  return s;
}

}  // namespace

ComplexMatrix sigma_x() { return mat2(0, 1, 1, 0); }
ComplexMatrix sigma_y() { return mat2(0, Complex(0, -1), Complex(0, 1), 0); }
ComplexMatrix sigma_z() { return mat2(1, 0, 0, -1); }

namespace gunther {

ComplexMatrix hamiltonian(double alpha, double s, double e0) {
  const double r = s * std::sin(alpha);
  return mat2(Complex(e0, r), s, s, Complex(e0, -r));
}

PTPair pt_pair() { return validate_pt_pair(sigma_x(), identity(2)); }

ComplexMatrix eta(double alpha) {
  const double c = std::cos(alpha);
  const double sn = std::sin(alpha);
  return (2.0 / (c * c)) * mat2(1, Complex(0, -sn), Complex(0, sn), 1);
}

ComplexMatrix tau(double alpha) {
  const double sn = std::sin(alpha);
  return (1.0 / std::cos(alpha)) * mat2(1, Complex(0, -sn), Complex(0, sn), 1);
}

ComplexMatrix h1(double alpha, double s, double e0) {
  const double c = std::cos(alpha);
  return mat2(e0, s * c * c, s * c * c, e0);
}

ComplexMatrix h2(double alpha, double s) {
  const double v = s * std::sin(alpha) * std::cos(alpha);
  return mat2(Complex(0, v), 0, 0, Complex(0, -v));
}

ComplexMatrix h4(double alpha, double s, double e0) { return h1(alpha, s, e0); }

ComplexMatrix hhat_tensor(double alpha, double s, double e0) {
  const double c = std::cos(alpha);
  return kron(identity(2), e0 * identity(2) + s * c * c * sigma_x()) -
         s * c * std::sin(alpha) * kron(sigma_y(), sigma_z());
}

ComplexMatrix hhat_tensor_unscaled(double alpha, double s, double e0) {
  const double c = std::cos(alpha);
  return kron(identity(2), e0 * identity(2) + s * c * c * sigma_x()) -
         c * std::sin(alpha) * kron(sigma_y(), sigma_z());
}

ComplexMatrix projector_y(double alpha) {
  const double c = std::cos(alpha);
  const Complex is(0, std::sin(alpha));
  ComplexMatrix p(4, 4);
  p << 1, is, c, 0,
      -is, 1, 0, c,
      c, 0, 1, -is,
      0, c, is, 1;
  return 0.5 * p;
}

ComplexMatrix u_tau(double alpha) {
  const Complex e = std::polar(1.0, alpha);
  const Complex ec = std::conj(e);
  ComplexMatrix u(4, 4);
  u << e, -1, 1, e,
      -1, ec, ec, 1,
      1, ec, -ec, 1,
      e, 1, 1, -e;
  return 0.5 * u;
}

ComplexVector psi_initial() {
  ComplexVector v(2);
  v << 1, 0;
  return v;
}

ComplexVector chi_initial(double alpha) {
  ComplexVector v(2);
  v << 1, Complex(0, std::sin(alpha));
  return v / std::cos(alpha);
}

}  // namespace gunther

std::vector<CorpusEntry> classification_corpus() {
  std::vector<CorpusEntry> c;
  constexpr double kPi = 3.14159265358979323846;
  const Complex i(0, 1);

  // unbroken
  c.push_back(real_entry("sigma_z", sigma_z(), PTKind::UnbrokenPT));
  c.push_back(real_entry("sigma_x", sigma_x(), PTKind::UnbrokenPT));
  c.push_back(sigma_x_entry("gunther_pi6", gunther::hamiltonian(kPi / 6, 1, 0), PTKind::UnbrokenPT));
  c.push_back(sigma_x_entry("gunther_pi4_s2_e1", gunther::hamiltonian(kPi / 4, 2, 1), PTKind::UnbrokenPT));
  {
    ComplexMatrix h(3, 3);
    h << 1, 1, 1, 0, 2, 1, 0, 0, 3;
    c.push_back(real_entry("upper_triangular_123", h, PTKind::UnbrokenPT));
  }
  {
    ComplexMatrix s(4, 4);
    s << 1, 1, 0, 2, 0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1;
    c.push_back(real_entry("real_similar_1234", similar(s, diag({1, 2, 3, 4})), PTKind::UnbrokenPT));
  }
  c.push_back(from_frame("complex_frame_2", mat2(1, i, 0.5, 2), diag({-1, 3})));
  {
    ComplexMatrix s(3, 3);
    s << 1, i, 0, 0.5, 1, 2.0 * i, 1.0 + i, 0, 1;
    c.push_back(from_frame("complex_frame_3", s, diag({0.5, -1, 2})));
  }
  {
    ComplexMatrix s(4, 4);
    s << 2, i, 0, 1, 0, 1, 1.0 - i, 0, 0.5 * i, 0, 1, 1, 1, 0, i, 3;
    c.push_back(from_frame("complex_frame_4", s, diag({-2, -0.5, 1, 2.5})));
  }
  c.push_back({"gunther_doubled", kron(gunther::hamiltonian(1.0, 1, -0.5), identity(2)), kron(sigma_x(), identity(2)),
               identity(4), PTKind::UnbrokenPT});

  // broken, diagonalizable
  c.push_back(sigma_x_entry("gain_loss_2i", mat2(2.0 * i, 1, 1, -2.0 * i), PTKind::BrokenDiagonalizable));
  c.push_back(sigma_x_entry("gain_loss_shifted", mat2(1.0 + 2.0 * i, 1, 1, 1.0 - 2.0 * i),
                            PTKind::BrokenDiagonalizable));
  c.push_back(real_entry("rotation_generator", mat2(0, 1, -1, 0), PTKind::BrokenDiagonalizable));
  {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.topLeftCorner(2, 2) = mat2(1, -2, 2, 1);
    d(2, 2) = 5;
    c.push_back(real_entry("real_similar_pair_3", similar(real_frame3(), d), PTKind::BrokenDiagonalizable));
  }
  {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.topLeftCorner(2, 2) = mat2(0, 1, -1, 0);
    d(2, 2) = 1;
    d(3, 3) = 2;
    c.push_back(real_entry("rotation_plus_diag_4", d, PTKind::BrokenDiagonalizable));
  }

  // defective
  c.push_back(sigma_x_entry("exceptional_point", mat2(i, 1, 1, -i), PTKind::Defective));
  c.push_back(real_entry("nilpotent_2", mat2(0, 1, 0, 0), PTKind::Defective));
  c.push_back(real_entry("jordan_2", mat2(2, 1, 0, 2), PTKind::Defective));
  {
    ComplexMatrix j(3, 3);
    j << 1, 1, 0, 0, 1, 1, 0, 0, 1;
    c.push_back(real_entry("jordan_3_similar", similar(real_frame3(), j), PTKind::Defective));
  }
  {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.topLeftCorner(2, 2) = mat2(-1, 1, 0, -1);
    d(2, 2) = 3;
    d(3, 3) = 4;
    c.push_back(real_entry("jordan_2_plus_diag_4", d, PTKind::Defective));
  }
  return c;
}

}  // namespace ptsim
