#include "cpd/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cpd {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << std::setprecision(17);
    return out;
}

Matrix read_matrix(std::istream& in, Index rows, Index cols, const std::string& what) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            if (!(in >> m(i, j)) || !std::isfinite(m(i, j)))
                throw std::runtime_error("bad or non-finite entry in " + what);
        }
    return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

}  // namespace

void save_tensor(const Tensor3& t, const std::string& path) {
    auto out = open_out(path);
    out << "dims " << t.dim(1) << ' ' << t.dim(2) << ' ' << t.dim(3) << '\n';
    const double* p = t.data();
    for (Index idx = 0; idx < t.size(); ++idx)
        out << p[idx] << (((idx + 1) % t.dim(1)) == 0 ? '\n' : ' ');
}

Tensor3 load_tensor(const std::string& path) {
    auto in = open_in(path);
    std::string tag;
    Index i1 = 0, i2 = 0, i3 = 0;
    if (!(in >> tag >> i1 >> i2 >> i3) || tag != "dims")
        throw std::runtime_error(path + ": expected header 'dims I1 I2 I3'");
    if (i1 < 1 || i2 < 1 || i3 < 1)
        throw std::runtime_error(path + ": invalid dims");
    std::vector<double> data(static_cast<size_t>(i1 * i2 * i3));
    for (double& v : data) {
        if (!(in >> v) || !std::isfinite(v))
            throw std::runtime_error(path + ": bad or non-finite tensor entry");
    }
    return Tensor3(i1, i2, i3, std::move(data));
}

void save_factors(const Cpd& f, const std::string& path) {
    auto out = open_out(path);
    out << "factors " << f.rank() << ' ' << f.a.rows() << ' ' << f.b.rows() << ' '
        << f.c.rows() << '\n';
    write_matrix(out, f.a);
    write_matrix(out, f.b);
    write_matrix(out, f.c);
}

Cpd load_factors(const std::string& path) {
    auto in = open_in(path);
    std::string tag;
    Index r = 0, i1 = 0, i2 = 0, i3 = 0;
    if (!(in >> tag >> r >> i1 >> i2 >> i3) || tag != "factors")
        throw std::runtime_error(path + ": expected header 'factors R I1 I2 I3'");
    Cpd f;
    f.a = read_matrix(in, i1, r, path);
    f.b = read_matrix(in, i2, r, path);
    f.c = read_matrix(in, i3, r, path);
    return f;
}

void write_matrix_csv(const Matrix& m, std::ostream& os) {
    os << std::setprecision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << '\n';
    }
}

}  // namespace cpd
