#include "coboson/grid_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coboson/errors.hpp"

namespace coboson {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

WaveFunctionGrid read_wfgrid(std::istream& in) {
    std::string magic, version;
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> magic >> version >> rows >> cols)) {
        throw InvalidParameter("WFGRID header missing or malformed");
    }
    if (magic != "WFGRID" || version != "v1") {
        throw InvalidParameter("expected a 'WFGRID v1' header");
    }
    if (rows < 2 || cols < 2) throw InvalidParameter("WFGRID needs at least 2 samples per axis");

    Eigen::VectorXd xa(rows), xb(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!(in >> xa[i])) throw InvalidParameter("WFGRID xa coordinate count mismatch");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (!(in >> xb[j])) throw InvalidParameter("WFGRID xb coordinate count mismatch");
    }
    Eigen::MatrixXcd amp(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im)) throw InvalidParameter("WFGRID amplitude count mismatch");
            amp(i, j) = {re, im};
        }
    }
    double trailing;
    if (in >> trailing) throw InvalidParameter("WFGRID has trailing data beyond rows*cols amplitudes");
    return WaveFunctionGrid::make(std::move(amp), std::move(xa), std::move(xb));
}

WaveFunctionGrid read_wfgrid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grid file: " + path);
    return read_wfgrid(in);
}

void write_wfgrid(std::ostream& out, const WaveFunctionGrid& grid) {
    const Eigen::Index rows = grid.amplitudes.rows();
    const Eigen::Index cols = grid.amplitudes.cols();
    out << "WFGRID v1 " << rows << ' ' << cols << '\n';
    for (Eigen::Index i = 0; i < rows; ++i) out << (i ? " " : "") << fmt17(grid.xa_coords[i]);
    out << '\n';
    for (Eigen::Index j = 0; j < cols; ++j) out << (j ? " " : "") << fmt17(grid.xb_coords[j]);
    out << '\n';
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            out << fmt17(grid.amplitudes(i, j).real()) << ' ' << fmt17(grid.amplitudes(i, j).imag())
                << '\n';
        }
    }
}

void write_wfgrid_file(const std::string& path, const WaveFunctionGrid& grid) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write grid file: " + path);
    write_wfgrid(out, grid);
    if (!out) throw IoError("write failed: " + path);
}

SpectrumFile read_spectrum(std::istream& in) {
    std::vector<double> lambdas;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double value;
        while (ls >> value) {
            if (!(value >= 0.0)) throw InvalidParameter("spectrum eigenvalues must be nonnegative");
            lambdas.push_back(value);
        }
        if (!ls.eof()) throw InvalidParameter("spectrum file contains a non-numeric token");
    }
    if (lambdas.empty()) throw InvalidParameter("spectrum file contains no eigenvalues");

    SpectrumFile result;
    double sum = 0.0;
    for (double l : lambdas) sum += l;
    if (!(sum > 0.0)) throw InvalidParameter("spectrum file sums to zero");
    result.raw_sum = sum;
    result.normalization_warning = std::abs(sum - 1.0) > 1e-6;
    for (double& l : lambdas) l /= sum;
    result.spectrum = explicit_spectrum(std::move(lambdas));
    return result;
}

SpectrumFile read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spectrum file: " + path);
    return read_spectrum(in);
}

}  // namespace coboson
