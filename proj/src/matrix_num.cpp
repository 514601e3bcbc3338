#include "hyperlab/matrix_num.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperlab {

double spectral_norm(const CMatrix& t) {
    if (t.rows() == 0 || t.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(t);
    return svd.singularValues()(0);
}

double trace_norm(const CMatrix& t) {
    if (t.rows() == 0 || t.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(t);
    return svd.singularValues().sum();
}

Eigen::VectorXd singular_values(const CMatrix& t) {
    if (t.rows() == 0 || t.cols() == 0) return Eigen::VectorXd(0);
    Eigen::JacobiSVD<CMatrix> svd(t);
    return svd.singularValues();
}

CMatrix apply_pattern(const Pattern& a, const CMatrix& t) {
    if (a.rows() != t.rows() || a.cols() != t.cols()) {
        throw DimensionMismatch("apply_pattern: pattern " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs matrix " +
                                std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
    }
    CMatrix out = CMatrix::Zero(t.rows(), t.cols());
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t r = a.row_mask(i);
        while (r) {
            const int j = std::countr_zero(r);
            out(i, j) = t(i, j);
            r &= r - 1;
        }
    }
    return out;
}

CMatrix submatrix(const CMatrix& t, const Rectangle& r) {
    const auto rows = r.row_indices();
    const auto cols = r.col_indices();
    CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                t(rows[a], cols[b]);
    return out;
}

std::complex<double> pairing(const CMatrix& t, const CMatrix& w) {
    if (t.rows() != w.rows() || t.cols() != w.cols())
        throw DimensionMismatch("pairing: shape mismatch");
    return (t.array() * w.array()).sum();
}

std::string format_complex(std::complex<double> z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
        return buf;
    }
    std::string out;
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
    out = buf;
    std::snprintf(buf, sizeof buf, "%.17g", std::abs(z.imag()));
    out += (z.imag() < 0 ? "-" : "+");
    out += buf;
    out += 'i';
    return out;
}

std::complex<double> parse_complex(const std::string& token) {
    if (token.empty()) throw ParseError("empty complex token");
    if (token.back() != 'i') {
        std::size_t pos = 0;
        double re = 0;
        try {
            re = std::stod(token, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad numeric token '" + token + "'");
        }
        if (pos != token.size()) throw ParseError("bad numeric token '" + token + "'");
        return {re, 0.0};
    }
    // Forms: "re+imi" / "re-imi"; the sign splitting the parts is the last
    // '+'/'-' that is not part of an exponent.
    const std::string body = token.substr(0, token.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) throw ParseError("bad complex token '" + token + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string re_part = body.substr(0, split);
        const std::string im_part = body.substr(split);  // includes sign
        const double re = std::stod(re_part, &p1);
        const double im = std::stod(im_part, &p2);
        if (p1 != re_part.size() || p2 != im_part.size())
            throw ParseError("bad complex token '" + token + "'");
        return {re, im};
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad complex token '" + token + "'");
    }
}

namespace {

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n,");
        if (first == std::string::npos) continue;
        return line;
    }
    return {};
}

} // namespace

CMatrix read_matrix(std::istream& in) {
    const std::string header = next_content_line(in);
    if (header.empty()) throw ParseError("matrix: missing dimension line");
    std::istringstream hs(header);
    int m = 0, n = 0;
    if (!(hs >> m >> n) || m < 1 || n < 1)
        throw ParseError("matrix: bad dimension line '" + header + "'");
    CMatrix out(m, n);
    for (int i = 0; i < m; ++i) {
        std::string line = next_content_line(in);
        if (line.empty()) throw ParseError("matrix: missing row " + std::to_string(i + 1));
        for (auto& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(ls >> tok))
                throw ParseError("matrix: row " + std::to_string(i + 1) + " too short");
            out(i, j) = parse_complex(tok);
        }
    }
    return out;
}

void write_matrix(std::ostream& out, const CMatrix& t) {
    out << t.rows() << ' ' << t.cols() << '\n';
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            if (j) out << ' ';
            out << format_complex(t(i, j));
        }
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const CMatrix& t) {
    out << t.rows() << ' ' << t.cols() << '\n';
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            if (j) out << ',';
            out << format_complex(t(i, j));
        }
        out << '\n';
    }
}

CMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return read_matrix(in);
}

void save_matrix(const std::string& path, const CMatrix& t) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write matrix file: " + path);
    write_matrix(out, t);
}

} // namespace hyperlab
