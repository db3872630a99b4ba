#pragma once

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "qedion/photon/fock.hpp"

namespace qedion {

// Structured text snapshot: mode table followed by the sparse amplitude
// list, one record per line, decimal with 17 significant digits.
//
//   modes <M>
//   <i> <kx> <ky> <kz> <lambda> <weight> <omega>
//   ...
//   state <nmax> <entries>
//   <n_pairs> <mode:count ...> <re> <im>
inline void write_snapshot(std::ostream& os, const FockVector& v) {
    const ModeGrid& g = v.grid();
    os << std::setprecision(17);
    os << "modes " << g.size() << "\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Mode& m = g.mode(i);
        os << i << " " << m.k[0] << " " << m.k[1] << " " << m.k[2] << " "
           << (m.lam == Pol::minus ? "-" : "+") << " " << m.w << " " << m.omega << "\n";
    }
    os << "state " << v.n_max() << " " << v.amplitudes().size() << "\n";
    for (auto& [k, a] : v.amplitudes()) {
        os << k.size();
        for (auto& [mode, cnt] : k) os << " " << mode << ":" << (int)cnt;
        os << " " << a.real() << " " << a.imag() << "\n";
    }
}

// Reads back the amplitude list onto an existing grid (the caller owns the
// grid; the mode table is checked for size only).
inline FockVector read_snapshot(std::istream& is, const ModeGrid& grid) {
    std::string tok;
    std::size_t nmodes = 0;
    is >> tok >> nmodes;
    if (tok != "modes" || nmodes != grid.size())
        throw std::runtime_error("snapshot: mode table mismatch");
    for (std::size_t i = 0; i < nmodes; ++i) {
        std::string line;
        std::getline(is >> std::ws, line);
    }
    int nmax = 0;
    std::size_t entries = 0;
    is >> tok >> nmax >> entries;
    if (tok != "state") throw std::runtime_error("snapshot: missing state header");
    FockVector v(grid, nmax);
    for (std::size_t e = 0; e < entries; ++e) {
        std::size_t np;
        is >> np;
        OccKey key;
        for (std::size_t p = 0; p < np; ++p) {
            std::string pair;
            is >> pair;
            const auto colon = pair.find(':');
            key.emplace_back((std::uint32_t)std::stoul(pair.substr(0, colon)),
                             (std::uint8_t)std::stoi(pair.substr(colon + 1)));
        }
        double re, im;
        is >> re >> im;
        v.add(key, {re, im});
    }
    return v;
}

}  // namespace qedion
