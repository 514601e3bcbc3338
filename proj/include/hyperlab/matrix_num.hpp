#ifndef HYPERLAB_MATRIX_NUM_HPP
#define HYPERLAB_MATRIX_NUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>

#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// Dense complex matrix; the finite stand-in for a bounded operator.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest singular value. Zero-sized inputs give 0.
double spectral_norm(const CMatrix& t);

/// Sum of singular values.
double trace_norm(const CMatrix& t);

/// Singular values, descending.
Eigen::VectorXd singular_values(const CMatrix& t);

/// Entrywise mask by the pattern's 0/1 matrix.
CMatrix apply_pattern(const Pattern& a, const CMatrix& t);

/// Restriction of t to the rows/columns of a rectangle.
CMatrix submatrix(const CMatrix& t, const Rectangle& r);

/// Bilinear pairing <T, W> = sum_ij T_ij W_ij.
std::complex<double> pairing(const CMatrix& t, const CMatrix& w);

/// Matrix text format: first line "m n"; then m rows of whitespace-separated
/// entries "re" or "re+imi" / "re-imi" (e.g. "1.5-0.25i").
CMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const CMatrix& t);
/// Same layout with comma separators.
void write_matrix_csv(std::ostream& out, const CMatrix& t);
CMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMatrix& t);

/// Formats one complex entry in the file syntax above ("%.17g" parts).
std::string format_complex(std::complex<double> z);
std::complex<double> parse_complex(const std::string& token);

} // namespace hyperlab

#endif
