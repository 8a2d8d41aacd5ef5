#include "fimin/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fimin/errors.hpp"
#include "fimin/kernels.hpp"

namespace fimin {

Grid::Grid(double x_min, double x_max, int n_points)
    : x_min(x_min), x_max(x_max), n_points(n_points) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw contract_error("grid requires finite x_min < x_max");
    }
    if (n_points < 3) {
        throw contract_error("grid requires at least 3 nodes");
    }
}

double norm_integral(const GridWavefunction& psi) {
    if (static_cast<int>(psi.values.size()) != psi.grid.n_points) {
        throw contract_error("wavefunction sample count does not match its grid");
    }
    return kernels::norm_squared(psi.values, psi.grid.spacing());
}

GridWavefunction normalized(const GridWavefunction& psi) {
    const double nrm = norm_integral(psi);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw domain_error("amplitude has vanishing or non-finite norm integral");
    }
    GridWavefunction out = psi;
    const double scale = 1.0 / std::sqrt(nrm);
    for (double& v : out.values) v *= scale;
    return out;
}

double boundary_magnitude(const GridWavefunction& psi) {
    if (psi.values.empty()) return 0.0;
    return std::max(std::abs(psi.values.front()), std::abs(psi.values.back()));
}

void write_wavefunction_csv(const GridWavefunction& psi, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw schema_error("cannot open " + path + " for writing");
    }
    out << "x,psi\n";
    char line[80];
    for (int i = 0; i < psi.grid.n_points; ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", psi.grid.node(i),
                      psi.values[static_cast<std::size_t>(i)]);
        out << line;
    }
}

GridWavefunction read_wavefunction_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw schema_error("cannot open " + path);
    }
    std::string line;
    std::vector<double> xs;
    std::vector<double> vals;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "x,psi") {
                throw schema_error(path + ": expected header 'x,psi', got '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        double x = 0.0;
        double v = 0.0;
        char comma = 0;
        if (!(row >> x >> comma >> v) || comma != ',' ||
            (row >> std::ws, !row.eof())) {
            throw schema_error(path + ": malformed row at line " + std::to_string(lineno));
        }
        xs.push_back(x);
        vals.push_back(v);
    }
    if (xs.size() < 3) {
        // Includes the fully empty file: nothing a grade run could normalize.
        throw domain_error(path + ": no usable samples");
    }
    const double h = xs[1] - xs[0];
    if (!(h > 0.0)) {
        throw schema_error(path + ": x must be strictly increasing");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double hi = xs[i] - xs[i - 1];
        if (!(hi > 0.0)) {
            throw schema_error(path + ": x must be strictly increasing");
        }
        if (std::abs(hi - h) > 1e-9 * std::abs(h)) {
            throw schema_error(path + ": non-uniform spacing near row " + std::to_string(i + 1));
        }
    }
    GridWavefunction psi;
    psi.grid = Grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
    psi.values = std::move(vals);
    return psi;
}

} // namespace fimin
