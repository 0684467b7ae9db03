#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collatzkit/cascade.hpp"
#include "collatzkit/cycles.hpp"
#include "collatzkit/fiber57.hpp"
#include "collatzkit/matrix.hpp"
#include "collatzkit/modular.hpp"
#include "collatzkit/phantom.hpp"
#include "collatzkit/report.hpp"
#include "collatzkit/stategraph.hpp"
#include "collatzkit/syracuse.hpp"
#include "collatzkit/walsh.hpp"

namespace py = pybind11;
using namespace collatz;

namespace {

Int to_int(const std::string& s) { return Int(s); }
std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace

PYBIND11_MODULE(_collatzkit, m) {
    m.doc() = "exact Collatz structure laws: orbits, censuses, kernels, graphs";

    m.def("v2", [](const std::string& n) { return v2(to_int(n)); });
    m.def("mod_inverse_pow2", [](const std::string& a, unsigned long e) {
        return mod_inverse_pow2(to_int(a), e).get_str();
    });
    m.def("collatz_step", [](const std::string& n) { return collatz_step(to_int(n)).get_str(); });
    m.def("syracuse_step", [](const std::string& n) {
        auto s = syracuse_step(to_int(n));
        return py::make_tuple(s.next.get_str(), s.valuation);
    });
    m.def(
        "orbit",
        [](const std::string& n0, size_t max_steps) {
            auto t = orbit(to_int(n0), max_steps);
            std::vector<std::string> vals;
            for (auto& v : t.values) vals.push_back(v.get_str());
            py::dict d;
            d["values"] = vals;
            d["valuations"] = t.valuations;
            d["reached_one"] = t.reached_one;
            return d;
        },
        py::arg("n0"), py::arg("max_steps") = 100000);
    m.def("run_length", [](const std::string& n) { return run_length(to_int(n)); });
    m.def("sigma_crossing", [](const std::string& n, size_t cap, bool collatz_steps) {
        auto r = sigma_crossing(to_int(n), cap, collatz_steps);
        return r ? py::cast(*r) : py::none();
    }, py::arg("n0"), py::arg("cap") = 100000, py::arg("collatz_steps") = false);

    m.def("lattice_path_f", [](unsigned long J) { return rat_str(lattice_path_f(J)); });
    m.def("crossing_strata", [](unsigned long K) { return rat_str(crossing_strata(K)); });
    m.def("positive_drift_fraction", [](unsigned long M) {
        auto p = positive_drift_fraction(M);
        return py::make_tuple(rat_str(p.fraction), p.max_steps);
    });
    m.def("block_residue", [](const std::vector<unsigned long>& w) {
        auto b = block_residue(w);
        return py::make_tuple(b.cls.value.get_str(), b.cls.modulus_exp, rat_str(b.density));
    });

    m.def("one_cycle_densities", []() {
        auto d = one_cycle_densities(500);
        return py::make_tuple(decimal_string(d.p1cyc, 14), decimal_string(d.p_all, 14));
    });
    m.def("gain_series", [](unsigned long kmax) {
        auto g = gain_series(kmax);
        py::dict d;
        d["r_of_k"] = g.r_of_k;
        d["partial_sum"] = g.partial_sum;
        d["tail_bound"] = g.tail_bound;
        d["total_bound"] = g.total_bound;
        return d;
    });
    m.def("necklace_counts", [](unsigned long K) {
        auto n = necklace_counts(K);
        py::dict d;
        for (auto& [l, c] : n.by_length) d[py::int_(l)] = c.get_str();
        return py::make_tuple(d, n.total.get_str(), n.expanding.get_str());
    });
    m.def("phantom_root", [](const std::vector<unsigned long>& sig) {
        auto p = phantom_root({sig});
        return py::make_tuple(p.C.get_str(), p.D.get_str(), rat_str(p.rho));
    });
    m.def("rotation_deltas", [](const std::vector<unsigned long>& sig) {
        auto ds = rotation_deltas({sig});
        py::list out;
        for (auto& d : ds) out.append(d ? py::cast(*d) : py::none());
        return out;
    });

    m.def("cascade_markov_rho", []() {
        auto cm = cascade_markov();
        auto pr = perron_root(cm.Q, Rat(1, 1 << 20));
        return pr.exact ? rat_str(*pr.exact) : "";
    });
    m.def("fiber_transition_matrix", [](unsigned long R) {
        auto T = fiber_transition_matrix(R);
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < 8; ++i) {
            std::vector<std::string> row;
            for (size_t j = 0; j < 8; ++j) row.push_back(rat_str(T.at(i, j)));
            rows.push_back(row);
        }
        return rows;
    }, py::arg("R") = 10);

    m.def("partial_kernel_rho", []() {
        auto pr = perron_root(partial_kernel(), Rat(1, 1 << 20));
        return pr.exact ? rat_str(*pr.exact) : "";
    });
    m.def("invariant_core", [](unsigned long r) {
        auto c = invariant_core(r);
        std::vector<std::string> out;
        for (auto& q : c.elements) out.push_back(q.get_str());
        return out;
    });
    m.def("absorption_run", [](unsigned long r, const std::string& s, const std::string& offset) {
        auto a = absorption_run(r, to_int(s), to_int(offset));
        return py::make_tuple(a.steps, a.revisited_core);
    }, py::arg("r"), py::arg("s"), py::arg("offset") = "10000");

    m.def("build_state_graph_summary", [](unsigned long M, unsigned long K, unsigned long B) {
        auto r = dag_ranking(build_state_graph(M, K, B));
        py::dict d;
        d["acyclic"] = r.acyclic;
        d["max_rank"] = r.max_rank;
        d["cycle_residues"] = r.cycle_residues;
        return d;
    }, py::arg("M"), py::arg("K") = 1, py::arg("B") = 15);

    m.def("walsh_spectrum", [](std::vector<double> f) { return walsh_spectrum(std::move(f)); });

    m.def("run_suite", [](const std::string& name, uint64_t seed) {
        SuiteConfig cfg;
        cfg.seed = seed;
        auto rep = run_suite(name, cfg);
        return py::make_tuple(rep.pass(), rep.to_json());
    }, py::arg("name"), py::arg("seed") = 1);
    m.def("emit_table", [](const std::string& name, const std::string& format) {
        auto t = emit_table(name);
        return format == "csv" ? t.to_csv() : t.to_json();
    }, py::arg("name"), py::arg("format") = "json");

    m.attr("__version__") = version();
}
