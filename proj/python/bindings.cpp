#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>

#include "zsum/constructions.hpp"
#include "zsum/engine.hpp"
#include "zsum/errors.hpp"
#include "zsum/group.hpp"
#include "zsum/prime_sets.hpp"
#include "zsum/sequence.hpp"

namespace py = pybind11;

namespace {

py::tuple element_tuple(const zsum::GroupElement& e) {
    py::tuple t(e.coords.size());
    for (std::size_t i = 0; i < e.coords.size(); ++i) t[i] = e.coords[i];
    return t;
}

py::dict result_dict(const zsum::GroupSpec& g, const std::string& algorithm,
                     const zsum::HarborthResult& result) {
    py::list levels;
    for (const zsum::LevelStats& ls : result.levels) {
        py::dict d;
        d["k"] = ls.k;
        d["good"] = ls.good;
        d["total"] = ls.total;
        levels.append(d);
    }
    py::dict out;
    out["group"] = zsum::format_group(g);
    out["algorithm"] = algorithm;
    out["g"] = result.g;
    out["levels"] = levels;
    out["peak_bytes"] = result.peak_level_bytes;
    if (result.extremal_count) out["extremal_count"] = *result.extremal_count;
    return out;
}

py::dict report_dict(const zsum::ConstructionReport& report) {
    py::dict out;
    out["group"] = zsum::format_group(report.group);
    out["length"] = report.claimed_length;
    out["sequence"] = zsum::format_sequence(report.sequence);
    out["sigma"] = element_tuple(report.sigma_value);
    out["squarefree"] = report.squarefree;
    out["zero_sum_free_at_exp"] = report.zero_sum_free_at_exp;
    out["accepted"] = report.accepted;
    out["failures"] = report.failures;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Harborth constants, extremal sets and addition-theorem "
              "oracles for finite abelian groups";

    py::register_exception<zsum::parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<zsum::resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<zsum::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def(
        "harborth",
        [](const std::string& group, const std::string& algorithm, int threads,
           std::uint64_t memory_bytes) {
            zsum::GroupSpec g = zsum::parse_group(group);
            std::string algo = algorithm;
            if (algo == "auto") algo = g.order() <= 18 ? "direct" : "bfs";
            zsum::HarborthResult result;
            if (algo == "direct") {
                result = zsum::harborth_direct(g);
            } else if (algo == "bfs") {
                zsum::EngineOptions opts;
                opts.threads = threads;
                opts.memory_cap_bytes = memory_bytes;
                result = zsum::harborth_bfs(g, opts);
            } else {
                throw zsum::parse_error("algorithm must be bfs, direct or auto");
            }
            return result_dict(g, algo, result);
        },
        py::arg("group"), py::arg("algorithm") = "auto", py::arg("threads") = 0,
        py::arg("memory_bytes") = std::uint64_t{4} << 30,
        "Compute g(G) for a group given by invariant factors, e.g. '3x9'.");

    m.def(
        "davenport",
        [](const std::string& group, std::uint64_t order_cap) {
            return zsum::davenport(zsum::parse_group(group), order_cap);
        },
        py::arg("group"), py::arg("order_cap") = 32,
        "Exact Davenport constant by exhaustive search (small groups).");

    m.def(
        "known_value",
        [](const std::string& group,
           bool include_conjectures) -> std::optional<py::tuple> {
            auto kv = zsum::known_value(zsum::parse_group(group), include_conjectures);
            if (!kv) return std::nullopt;
            return py::make_tuple(kv->value, kv->provenance, kv->conjectural);
        },
        py::arg("group"), py::arg("include_conjectures") = false,
        "Known value of g(G) as (value, provenance, conjectural), or None.");

    m.def(
        "group_order",
        [](const std::string& group) { return zsum::parse_group(group).order(); },
        py::arg("group"));
    m.def(
        "group_exponent",
        [](const std::string& group) { return zsum::parse_group(group).exponent(); },
        py::arg("group"));
    m.def(
        "normalize_group",
        [](const std::string& group) {
            return zsum::format_group(zsum::parse_group(group, /*normalize=*/true));
        },
        py::arg("group"), "Invariant-factor form of an arbitrary factor list.");

    m.def("verify_c3c9", []() { return report_dict(zsum::c3c9_construction()); });
    m.def(
        "verify_kiefer", [](int n) { return report_dict(zsum::kiefer_construction(n)); },
        py::arg("n"));
    m.def(
        "verify_composite",
        [](const std::string& g1, const std::string& g2, const std::string& s1,
           const std::string& s2prime) {
            zsum::GroupSpec a = zsum::parse_group(g1);
            zsum::GroupSpec b = zsum::parse_group(g2);
            return report_dict(zsum::composite_construction(
                a, b, zsum::parse_sequence(a, s1), zsum::parse_sequence(b, s2prime)));
        },
        py::arg("g1"), py::arg("g2"), py::arg("s1"), py::arg("s2prime"),
        "Verify the product construction from sequence literals.");

    m.def(
        "sigma",
        [](const std::string& group, const std::string& literal) {
            zsum::GroupSpec g = zsum::parse_group(group);
            return element_tuple(zsum::sigma(zsum::parse_sequence(g, literal)));
        },
        py::arg("group"), py::arg("literal"));
    m.def(
        "has_zero_sum_subsequence_of_length",
        [](const std::string& group, const std::string& literal, long long length) {
            zsum::GroupSpec g = zsum::parse_group(group);
            return zsum::has_zero_sum_subsequence_of_length(zsum::parse_sequence(g, literal),
                                                            length);
        },
        py::arg("group"), py::arg("literal"), py::arg("length"));
    m.def(
        "subsums",
        [](const std::string& group, const std::string& literal, long long h) {
            zsum::GroupSpec g = zsum::parse_group(group);
            py::list out;
            for (const auto& e : zsum::subsums_of_length(zsum::parse_sequence(g, literal), h)) {
                out.append(element_tuple(e));
            }
            return out;
        },
        py::arg("group"), py::arg("literal"), py::arg("h"),
        "All h-term subsums of a sequence literal.");

    m.def(
        "extremal_to_file",
        [](const std::string& group, const std::string& path, int threads,
           std::uint64_t memory_bytes) {
            zsum::GroupSpec g = zsum::parse_group(group);
            std::ofstream out(path);
            if (!out) throw zsum::parse_error("cannot open " + path);
            zsum::ExtremalSink sink;
            sink.begin = [&](int n, int k, std::uint64_t count) {
                zsum::write_level_dump_header(out, n, k, count);
            };
            sink.emit = [&](std::span<const int> elems) {
                zsum::write_level_dump_line(out, elems);
            };
            zsum::EngineOptions opts;
            opts.threads = threads;
            opts.memory_cap_bytes = memory_bytes;
            zsum::HarborthResult result = zsum::extremal_sets(g, std::nullopt, sink, opts);
            return result_dict(g, "bfs", result);
        },
        py::arg("group"), py::arg("path"), py::arg("threads") = 0,
        py::arg("memory_bytes") = std::uint64_t{4} << 30,
        "Dump the extremal sets at level g(G)-1 and return the run result.");

    m.def(
        "cauchy_davenport_holds",
        [](int p, const std::vector<int>& a, const std::vector<int>& b) {
            zsum::PrimeCyclicSet sa(p), sb(p);
            for (int x : a) sa.insert(x);
            for (int x : b) sb.insert(x);
            return zsum::cauchy_davenport_holds(sa, sb);
        },
        py::arg("p"), py::arg("a"), py::arg("b"));
    m.def(
        "dsh_holds",
        [](int p, const std::vector<int>& a, int h) {
            zsum::PrimeCyclicSet sa(p);
            for (int x : a) sa.insert(x);
            return zsum::dsh_holds(sa, h);
        },
        py::arg("p"), py::arg("a"), py::arg("h"));

#ifdef ZSUM_VERSION
    m.attr("__version__") = ZSUM_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
