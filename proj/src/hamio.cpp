// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/hamio.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>
#include <tuple>

namespace fastvqe {

FormatError::FormatError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? fmt::format("FCIDUMP line {}: {}", line, what)
                                  : fmt::format("FCIDUMP: {}", what)),
      line_(line) {}

MolecularIntegrals MolecularIntegrals::zeros(int n_orb, int n_elec, int ms2) {
    MolecularIntegrals mi;
    mi.n_orb = n_orb;
    mi.n_elec = n_elec;
    mi.ms2 = ms2;
    mi.h = Eigen::MatrixXd::Zero(n_orb, n_orb);
    mi.g = Tensor4(n_orb);
    return mi;
}

void MolecularIntegrals::set_eri(int p, int q, int r, int s, double value) {
    for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        for (auto [c, d] : {std::pair{r, s}, std::pair{s, r}}) {
            g(a, b, c, d) = value;
            g(c, d, a, b) = value;
        }
    }
}

void MolecularIntegrals::validate(double tol) const {
    if (n_orb < 1) throw std::invalid_argument("n_orb must be positive");
    if (n_orb > 32) throw std::invalid_argument("at most 32 spatial orbitals (64 spin orbitals)");
    if (n_elec < 0 || n_elec > 2 * n_orb) throw std::invalid_argument("n_elec out of range");
    if ((n_elec - ms2) % 2 != 0) throw std::invalid_argument("ms2 parity does not match n_elec");
    if (std::abs(ms2) > n_elec) throw std::invalid_argument("|ms2| exceeds n_elec");
    if (h.rows() != n_orb || h.cols() != n_orb || g.dim() != n_orb)
        throw std::invalid_argument("integral dimensions do not match n_orb");
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q < n_orb; ++q)
            if (std::abs(h(p, q) - h(q, p)) > tol) throw std::invalid_argument("h is not symmetric");
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q < n_orb; ++q)
            for (int r = 0; r < n_orb; ++r)
                for (int s = 0; s < n_orb; ++s) {
                    const double v = g(p, q, r, s);
                    if (std::abs(v - g(q, p, r, s)) > tol || std::abs(v - g(p, q, s, r)) > tol ||
                        std::abs(v - g(r, s, p, q)) > tol)
                        throw std::invalid_argument("g lacks 8-fold permutation symmetry");
                }
}

namespace {

bool starts_numeric(const std::string& line) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) return false;
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end != tok.c_str() && *end == '\0';
}

std::optional<int> header_int(const std::string& header, const std::string& key) {
    const std::regex re("(^|[^A-Za-z0-9_])" + key + R"(\s*=\s*([-+]?\d+))", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(header, m, re)) return std::nullopt;
    return std::stoi(m[2].str());
}

bool header_terminates(const std::string& line) {
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    if (upper.find("&END") != std::string::npos) return true;
    const auto last = upper.find_last_not_of(" \t\r");
    return last != std::string::npos && upper[last] == '/';
}

class RecordStore {
public:
    void put(std::tuple<int, int, int, int> key, double value, int line) {
        auto [it, inserted] = seen_.try_emplace(key, value);
        if (!inserted) {
            if (std::abs(it->second - value) > 1e-12)
                throw ConsistencyError(fmt::format(
                    "FCIDUMP line {}: conflicting duplicate entry ({} vs {})", line, it->second, value));
            it->second = value;
        }
    }

private:
    std::map<std::tuple<int, int, int, int>, double> seen_;
};

std::tuple<int, int, int, int> canonical_eri(int p, int q, int r, int s) {
    if (p < q) std::swap(p, q);
    if (r < s) std::swap(r, s);
    if (std::pair{p, q} < std::pair{r, s}) {
        std::swap(p, r);
        std::swap(q, s);
    }
    return {p, q, r, s};
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::string header;
    bool header_done = false;
    std::vector<std::pair<int, std::string>> body;

    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!header_done && header.empty() && line[first] == '#') continue;
        if (!header_done) {
            if (starts_numeric(line)) {
                header_done = true;
            } else {
                header += line + "\n";
                if (header_terminates(line)) header_done = true;
                continue;
            }
        }
        if (line[first] == '#') continue;
        body.emplace_back(lineno, line);
    }

    if (header.empty()) throw FormatError("missing namelist header");
    const auto norb = header_int(header, "NORB");
    const auto nelec = header_int(header, "NELEC");
    const auto ms2 = header_int(header, "MS2");
    if (!norb) throw FormatError("header lacks NORB");
    if (!nelec) throw FormatError("header lacks NELEC");
    if (!ms2) throw FormatError("header lacks MS2");
    if (*norb < 1 || *norb > 32) throw FormatError("NORB must be in [1, 32]");

    MolecularIntegrals mi = MolecularIntegrals::zeros(*norb, *nelec, *ms2);
    RecordStore store;

    for (const auto& [ln, text] : body) {
        std::istringstream ss(text);
        std::string value_tok;
        long idx[4];
        if (!(ss >> value_tok >> idx[0] >> idx[1] >> idx[2] >> idx[3]))
            throw FormatError("expected 'value i j k l'", ln);
        std::replace(value_tok.begin(), value_tok.end(), 'D', 'E');
        std::replace(value_tok.begin(), value_tok.end(), 'd', 'e');
        char* end = nullptr;
        const double value = std::strtod(value_tok.c_str(), &end);
        if (*end != '\0') throw FormatError("unparseable value '" + value_tok + "'", ln);
        for (long x : idx)
            if (x < 0 || x > *norb)
                throw FormatError(fmt::format("index {} outside [0, NORB={}]", x, *norb), ln);

        const int i = static_cast<int>(idx[0]), j = static_cast<int>(idx[1]);
        const int k = static_cast<int>(idx[2]), l = static_cast<int>(idx[3]);
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            store.put({0, 0, 0, 0}, value, ln);
            mi.e_core = value;
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            store.put(canonical_eri(i, j, k, l), value, ln);
            mi.set_eri(i - 1, j - 1, k - 1, l - 1, value);
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            const int p = std::max(i, j), q = std::min(i, j);
            store.put({p, q, 0, 0}, value, ln);
            mi.h(i - 1, j - 1) = value;
            mi.h(j - 1, i - 1) = value;
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            // orbital energy record; not part of the Hamiltonian
        } else {
            throw FormatError("unrecognized index pattern", ln);
        }
    }

    try {
        mi.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return mi;
}

MolecularIntegrals parse_fcidump_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_fcidump(ss);
}

MolecularIntegrals load_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open FCIDUMP file '" + path + "'");
    return parse_fcidump(in);
}

void write_fcidump(const MolecularIntegrals& mi, std::ostream& out) {
    out << fmt::format(" &FCI NORB={},NELEC={},MS2={},\n", mi.n_orb, mi.n_elec, mi.ms2);
    out << "  ORBSYM=";
    for (int p = 0; p < mi.n_orb; ++p) out << "1,";
    out << "\n  ISYM=1,\n &END\n";
    const int n = mi.n_orb;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
                    const double v = mi.g(p, q, r, s);
                    if (v != 0.0) out << fmt::format("{} {} {} {} {}\n", v, p + 1, q + 1, r + 1, s + 1);
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            if (mi.h(p, q) != 0.0) out << fmt::format("{} {} {} 0 0\n", mi.h(p, q), p + 1, q + 1);
    out << fmt::format("{} 0 0 0 0\n", mi.e_core);
}

SpinOrbitalHamiltonian to_spin_orbitals(const MolecularIntegrals& mi) {
    mi.validate();
    SpinOrbitalHamiltonian hso;
    hso.n_orb = mi.n_orb;
    hso.n_so = 2 * mi.n_orb;
    hso.e_core = mi.e_core;
    const int n = hso.n_so;
    hso.h1 = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (hso.spin(p) == hso.spin(q)) hso.h1(p, q) = mi.h(hso.spatial(p), hso.spatial(q));

    // <pq|rs> = (pr|qs) with spin(p)=spin(r), spin(q)=spin(s)
    auto coulomb = [&](int p, int q, int r, int s) {
        if (hso.spin(p) != hso.spin(r) || hso.spin(q) != hso.spin(s)) return 0.0;
        return mi.g(hso.spatial(p), hso.spatial(r), hso.spatial(q), hso.spatial(s));
    };
    hso.v2 = Tensor4(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) hso.v2(p, q, r, s) = coulomb(p, q, r, s) - coulomb(p, q, s, r);
    return hso;
}

MolecularIntegrals synth_integrals(std::uint64_t seed, int n_orb, int n_elec) {
    if (n_orb < 1) throw std::invalid_argument("synth_integrals: n_orb must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    MolecularIntegrals mi = MolecularIntegrals::zeros(n_orb, n_elec, n_elec % 2);
    mi.e_core = uni(rng);
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = uni(rng);
            mi.h(p, q) = v;
            mi.h(q, p) = v;
        }
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r < n_orb; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
                    mi.set_eri(p, q, r, s, uni(rng));
                }
    mi.validate();
    return mi;
}

}  // namespace fastvqe
