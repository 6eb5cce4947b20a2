// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/model_io.hpp"

#include "symapprox/detail/numeric.hpp"
#include "symapprox/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace symapprox {

namespace {

constexpr const char* kMagic = "symapprox-model";

void write_ids(std::ostream& out, const LatticeSpec& spec, const WedgeIndex& z) {
    for (std::uint64_t id : z.ids) {
        for (std::size_t a = 0; a < spec.dim(); ++a) out << spec.component(id, a) << ' ';
    }
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string word() {
        std::string w;
        if (!(in_ >> w)) throw ConfigError("model file truncated");
        return w;
    }

    void expect(const std::string& key) {
        const std::string w = word();
        if (w != key) throw ConfigError("model file: expected '" + key + "', found '" + w + "'");
    }

    double real() {
        const std::string w = word();
        const auto v = detail::parse_double(w);
        if (!v) throw ConfigError("model file: bad number '" + w + "'");
        return *v;
    }

    std::int64_t integer() {
        const std::string w = word();
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || w.empty()) throw ConfigError("model file: bad integer '" + w + "'");
        return v;
    }

    std::uint64_t unsigned_integer() {
        const std::string w = word();
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || w.empty() || w[0] == '-') {
            throw ConfigError("model file: bad unsigned integer '" + w + "'");
        }
        return v;
    }

    double keyed_real(const std::string& key) {
        expect(key);
        return real();
    }

    std::string keyed_word(const std::string& key) {
        expect(key);
        return word();
    }

private:
    std::istream& in_;
};

void read_ids(Reader& r, const LatticeSpec& spec, const WedgeIndex& expected) {
    for (std::uint64_t id : expected.ids) {
        for (std::size_t a = 0; a < spec.dim(); ++a) {
            if (r.integer() != spec.component(id, a)) throw ConfigError("model file: records out of rank order");
        }
    }
}

} // namespace

void write_model(std::ostream& out, const Approximator& model) {
    const LatticeSpec& spec = model.spec();
    const std::size_t n = model.num_points();
    out << kMagic << ' ' << kModelFormatVersion << '\n';
    out << "kind " << to_string(model.kind()) << '\n';
    out << "d " << spec.dim() << '\n';
    out << "N " << n << '\n';
    out << "lo " << detail::hex_double(spec.lo()) << '\n';
    out << "hi " << detail::hex_double(spec.hi()) << '\n';
    out << "delta " << detail::hex_double(spec.delta()) << '\n';
    out << "cells " << spec.cells_per_dim() << '\n';
    if (const auto* s = model.sym()) {
        out << "mode " << (s->mode() == CutoffMode::smooth ? "smooth" : "indicator") << '\n';
        out << "width " << detail::hex_double(s->smooth_width()) << '\n';
        out << "node " << (s->node() == NodePlacement::center ? "center" : "corner") << '\n';
        out << "records " << s->wedge_count() << '\n';
        const auto table = s->table();
        std::uint64_t rank = 0;
        for (const WedgeIndex& z : enumerate_wedge(spec, n, ~std::uint64_t{0})) {
            write_ids(out, spec, z);
            out << detail::hex_double(table[rank++]) << '\n';
        }
    } else {
        const AntisymTabulator& t = *model.antisym();
        const auto width = t.smooth_width();
        out << "mode " << (width ? "smooth" : "indicator") << '\n';
        out << "width " << detail::hex_double(width.value_or(0.0)) << '\n';
        out << "tau " << detail::hex_double(t.tau()) << '\n';
        out << "seed " << t.seed() << '\n';
        out << "records " << t.entry_count() << '\n';
        const bool linear = t.construction() == AntisymConstruction::linear;
        for (std::uint64_t rank = 0; rank < t.entry_count(); ++rank) {
            write_ids(out, spec, distinct_wedge_unrank(spec, n, rank));
            out << detail::hex_double(t.coefficients()[rank]);
            if (linear) {
                for (double c : t.direction_at(rank)) out << ' ' << detail::hex_double(c);
            }
            out << '\n';
        }
    }
    out << "end\n";
}

Approximator read_model(std::istream& in) {
    Reader r(in);
    r.expect(kMagic);
    const std::int64_t version = r.integer();
    if (version != kModelFormatVersion) {
        throw ConfigError("unsupported model format version " + std::to_string(version));
    }
    const ApproxKind kind = parse_approx_kind(r.keyed_word("kind"));
    r.expect("d");
    const std::uint64_t d = r.unsigned_integer();
    r.expect("N");
    const std::uint64_t n = r.unsigned_integer();
    const double lo = r.keyed_real("lo");
    const double hi = r.keyed_real("hi");
    const double delta = r.keyed_real("delta");
    r.expect("cells");
    const std::int64_t cells = r.integer();
    if (d == 0 || n == 0) throw ConfigError("model file: d and N must be positive");
    LatticeSpec spec = [&] {
        try {
            return LatticeSpec(delta, d, lo, hi);
        } catch (const ArgumentError& e) {
            throw ConfigError(std::string("model file: ") + e.what());
        }
    }();
    if (spec.cells_per_dim() != cells) throw ConfigError("model file: cell count does not match delta");
    const std::string mode = r.keyed_word("mode");
    if (mode != "indicator" && mode != "smooth") throw ConfigError("model file: unknown mode '" + mode + "'");
    const double width = r.keyed_real("width");

    try {
        if (kind == ApproxKind::sym) {
            const std::string node = r.keyed_word("node");
            if (node != "corner" && node != "center") throw ConfigError("model file: unknown node '" + node + "'");
            r.expect("records");
            const std::uint64_t count = r.unsigned_integer();
            if (count != wedge_size(spec, n)) throw ConfigError("model file: record count does not match the wedge");
            std::vector<double> table;
            table.reserve(count);
            for (const WedgeIndex& z : enumerate_wedge(spec, n, ~std::uint64_t{0})) {
                read_ids(r, spec, z);
                table.push_back(r.real());
            }
            r.expect("end");
            BuildStats stats;
            stats.wedge_size = count;
            return Approximator(SymmetricTabulator(spec, n, std::move(table),
                                                   mode == "smooth" ? CutoffMode::smooth : CutoffMode::indicator,
                                                   width,
                                                   node == "center" ? NodePlacement::center : NodePlacement::corner,
                                                   stats));
        }
        const double tau = r.keyed_real("tau");
        r.expect("seed");
        const std::uint64_t seed = r.unsigned_integer();
        r.expect("records");
        const std::uint64_t count = r.unsigned_integer();
        if (count != distinct_wedge_size(spec, n)) {
            throw ConfigError("model file: record count does not match the distinct wedge");
        }
        const bool linear = kind == ApproxKind::antisym_linear;
        std::vector<double> coefficients;
        std::vector<double> directions;
        coefficients.reserve(count);
        if (count > 0) {
            WedgeIndex z = distinct_wedge_unrank(spec, n, 0);
            for (std::uint64_t rank = 0; rank < count; ++rank) {
                read_ids(r, spec, z);
                coefficients.push_back(r.real());
                if (linear) {
                    for (std::size_t a = 0; a < d; ++a) directions.push_back(r.real());
                }
                next_distinct_wedge(spec.num_points(), z);
            }
        }
        r.expect("end");
        std::optional<double> smooth;
        if (mode == "smooth") smooth = width;
        return Approximator(AntisymTabulator(spec, n,
                                             linear ? AntisymConstruction::linear : AntisymConstruction::sorting,
                                             std::move(coefficients), std::move(directions), tau, seed, smooth));
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_model(const std::filesystem::path& path, const Approximator& model) {
    std::ostringstream os;
    write_model(os, model);
    write_file_atomic(path, os.str());
}

Approximator load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open model file " + path.string());
    return read_model(in);
}

} // namespace symapprox
