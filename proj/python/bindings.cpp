// Python bindings for the consistent subset sampling toolkit: hashing,
// the b-set samplers, the streaming estimators, graph counters, the
// partitioned sketch, and the CLI dispatcher (for end-to-end checks).

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cssample/cli.hpp"
#include "cssample/common.hpp"
#include "cssample/estimators.hpp"
#include "cssample/graphs.hpp"
#include "cssample/hashing.hpp"
#include "cssample/io.hpp"
#include "cssample/sampler.hpp"
#include "cssample/sketch.hpp"
#include "cssample/subset.hpp"

namespace py = pybind11;
using namespace css;

namespace {

BSet to_bset(const std::vector<element_t>& elems) { return BSet(elems); }

std::vector<std::vector<element_t>> to_lists(const std::vector<Subset>& subs) {
  std::vector<std::vector<element_t>> out;
  out.reserve(subs.size());
  for (const Subset& s : subs) out.push_back(s.vec());
  return out;
}

std::vector<BSet> to_bsets(const std::vector<std::vector<element_t>>& raw) {
  std::vector<BSet> out;
  out.reserve(raw.size());
  for (const auto& t : raw) out.emplace_back(t);
  return out;
}

IncidenceStream to_stream(
    const std::vector<std::pair<element_t, std::vector<element_t>>>& entries) {
  IncidenceStream g;
  for (const auto& [vertex, neighbors] : entries) {
    g.add(vertex, BSet(neighbors));
  }
  return g;
}

py::object opt_float(const std::optional<double>& v) {
  return v ? py::cast(*v) : py::none();
}

py::dict report_to_dict(const EstimateReport& r) {
  py::dict d;
  d["alpha_hat"] = opt_float(r.alpha_hat);
  d["z_hat"] = opt_float(r.z_hat);
  d["f_hat"] = opt_float(r.f_hat);
  d["failed"] = r.failed();
  py::list runs;
  for (const auto& run : r.runs) {
    py::dict rd;
    rd["copy"] = run.copy;
    rd["run"] = run.run;
    rd["guess"] = run.guess;
    rd["range"] = run.range;
    rd["sampled_distinct"] = run.sampled_distinct;
    rd["sentinel"] = run.sentinel;
    runs.append(rd);
  }
  d["runs"] = runs;
  py::list copies;
  for (const auto& c : r.copies) {
    py::dict cd;
    cd["copy"] = c.copy;
    cd["sentinel"] = c.sentinel;
    cd["chosen_run"] = c.chosen_run;
    cd["alpha_hat"] = opt_float(c.alpha_hat);
    cd["z_hat"] = opt_float(c.z_hat);
    copies.append(cd);
  }
  d["copies"] = copies;
  return d;
}

EstimatorConfig make_config(int k, double alpha, double epsilon, double delta,
                            std::uint64_t min_support, std::uint64_t m,
                            std::size_t b_max, std::uint64_t seed,
                            std::optional<std::uint64_t> force_q,
                            std::optional<std::uint64_t> force_s) {
  EstimatorConfig cfg;
  cfg.k = k;
  cfg.alpha = alpha;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.m = m;
  cfg.b_max = b_max;
  cfg.master_seed = seed;
  cfg.predicate = min_support_predicate(min_support);
  cfg.force_q = force_q;
  cfg.force_s = force_s;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_cssample, m) {
  m.doc() = "consistent sampling of k-subsets from transaction and incidence "
            "streams";

  py::register_exception<ParseError>(m, "InputParseError", PyExc_ValueError);
  py::register_exception<IngestError>(m, "InputIngestError", PyExc_ValueError);

  py::class_<PolynomialHash>(m, "PolynomialHash",
                             "2k-wise independent element hash over the "
                             "61-bit Mersenne field, reduced mod q")
      .def(py::init([](std::uint64_t seed, int k, std::uint64_t q) {
             return make_hash(seed, k, q);
           }),
           py::arg("seed"), py::arg("k"), py::arg("q"))
      .def("eval", &PolynomialHash::eval, py::arg("x"))
      .def_property_readonly("range", &PolynomialHash::range)
      .def_property_readonly("degree", &PolynomialHash::degree);

  m.def(
      "subset_hash",
      [](const PolynomialHash& h, const std::vector<element_t>& elems) {
        return subset_hash(h, Subset::sorted_unique(elems));
      },
      py::arg("h"), py::arg("elements"),
      "sum of element hashes mod q over the distinct elements");

  m.def(
      "sampling_condition",
      [](const PolynomialHash& h, const std::vector<element_t>& elems) {
        return sampling_condition(h, Subset::sorted_unique(elems));
      },
      py::arg("h"), py::arg("elements"),
      "whether the canonical half hashes of the sorted set collide");

  m.def(
      "sample_bset",
      [](const std::vector<element_t>& t, const PolynomialHash& h, int k) {
        return to_lists(sample_bset(to_bset(t), h, k));
      },
      py::arg("bset"), py::arg("h"), py::arg("k"));

  m.def(
      "sample_bset_tradeoff",
      [](const std::vector<element_t>& t, const PolynomialHash& h, int k,
         int ell) {
        return to_lists(sample_bset_tradeoff(to_bset(t), h, k, ell));
      },
      py::arg("bset"), py::arg("h"), py::arg("k"), py::arg("ell"));

  m.def(
      "sample_bset_range",
      [](const std::vector<element_t>& t, const PolynomialHash& h, int k,
         std::uint64_t lo, std::uint64_t len) {
        return to_lists(sample_bset_range(to_bset(t), h, k, lo, len));
      },
      py::arg("bset"), py::arg("h"), py::arg("k"), py::arg("lo"),
      py::arg("len"));

  m.def(
      "brute_force_sample",
      [](const std::vector<element_t>& t, const PolynomialHash& h, int k) {
        return to_lists(brute_force_sample(to_bset(t), h, k));
      },
      py::arg("bset"), py::arg("h"), py::arg("k"));

  m.def(
      "bucket_hash",
      [](const PolynomialHash& h, const std::vector<element_t>& elems) {
        return bucket_hash(h, Subset::sorted_unique(elems));
      },
      py::arg("h"), py::arg("elements"));

  m.def(
      "estimate_frequent_itemsets",
      [](const std::vector<std::vector<element_t>>& transactions, int k,
         double alpha, double epsilon, double delta, std::uint64_t min_support,
         std::uint64_t m, std::size_t b_max, std::uint64_t seed,
         std::optional<std::uint64_t> force_q,
         std::optional<std::uint64_t> force_s) {
        return report_to_dict(estimate_frequent_itemsets(
            to_bsets(transactions),
            make_config(k, alpha, epsilon, delta, min_support, m, b_max, seed,
                        force_q, force_s)));
      },
      py::arg("transactions"), py::arg("k"), py::arg("alpha"),
      py::arg("epsilon"), py::arg("delta"), py::arg("min_support"),
      py::arg("m"), py::arg("b_max"), py::arg("seed"),
      py::arg("force_q") = py::none(), py::arg("force_s") = py::none());

  m.def(
      "exact_counts",
      [](const std::vector<std::vector<element_t>>& transactions, int k,
         std::uint64_t min_support) {
        const ExactCounts c = exact_count_oracle(
            to_bsets(transactions), k, min_support_predicate(min_support));
        return std::make_pair(c.interesting, c.distinct);
      },
      py::arg("transactions"), py::arg("k"), py::arg("min_support"),
      "exact (frequent, distinct) itemset counts");

  m.def(
      "star_sampler",
      [](element_t u, const std::vector<element_t>& neighbors,
         const PolynomialHash& h, int k) {
        return to_lists(star_sampler(u, to_bset(neighbors), h, k));
      },
      py::arg("u"), py::arg("neighbors"), py::arg("h"), py::arg("k"));

  m.def(
      "estimate_cliques",
      [](const std::vector<std::pair<element_t, std::vector<element_t>>>&
             entries,
         int k, double gamma, double epsilon, double delta,
         std::size_t max_degree, std::uint64_t seed,
         std::optional<std::uint64_t> force_q,
         std::optional<std::uint64_t> force_s) {
        return report_to_dict(estimate_cliques(to_stream(entries), k, gamma,
                                               epsilon, delta, max_degree,
                                               seed, force_q, force_s));
      },
      py::arg("entries"), py::arg("k"), py::arg("gamma"), py::arg("epsilon"),
      py::arg("delta"), py::arg("max_degree"), py::arg("seed"),
      py::arg("force_q") = py::none(), py::arg("force_s") = py::none());

  m.def(
      "estimate_bicliques",
      [](const std::vector<std::pair<element_t, std::vector<element_t>>>&
             entries,
         std::uint64_t min_left, int j, double gamma, double epsilon,
         double delta, std::size_t max_degree, std::uint64_t seed,
         std::optional<std::uint64_t> force_q,
         std::optional<std::uint64_t> force_s) {
        return report_to_dict(estimate_bicliques(to_stream(entries), min_left,
                                                 j, gamma, epsilon, delta,
                                                 max_degree, seed, force_q,
                                                 force_s));
      },
      py::arg("entries"), py::arg("min_left"), py::arg("j"), py::arg("gamma"),
      py::arg("epsilon"), py::arg("delta"), py::arg("max_degree"),
      py::arg("seed"), py::arg("force_q") = py::none(),
      py::arg("force_s") = py::none());

  m.def(
      "exact_clique_counts",
      [](const std::vector<std::pair<element_t, std::vector<element_t>>>&
             entries,
         int k) {
        const CliqueCounts c = exact_clique_counts(to_stream(entries), k);
        return std::make_pair(c.cliques, c.stars);
      },
      py::arg("entries"), py::arg("k"), "exact (cliques, stars)");

  m.def(
      "exact_biclique_counts",
      [](const std::vector<std::pair<element_t, std::vector<element_t>>>&
             entries,
         std::uint64_t min_left, int j) {
        const BicliqueCounts c =
            exact_biclique_counts(to_stream(entries), min_left, j);
        return std::make_pair(c.bicliques, c.adjacencies);
      },
      py::arg("entries"), py::arg("min_left"), py::arg("j"),
      "exact (bicliques, adjacencies)");

  py::enum_<SketchKind>(m, "SketchKind")
      .value("count_min", SketchKind::count_min)
      .value("count_sketch", SketchKind::count_sketch);

  py::class_<PartitionedSketch>(m, "PartitionedSketch")
      .def(py::init<SketchKind, int, std::uint64_t, int, int, std::uint64_t>(),
           py::arg("kind"), py::arg("depth"), py::arg("width"),
           py::arg("workers"), py::arg("k"), py::arg("seed"))
      .def_property_readonly("depth", &PartitionedSketch::depth)
      .def_property_readonly("width", &PartitionedSketch::width)
      .def_property_readonly("workers", &PartitionedSketch::workers)
      .def_property_readonly("k", &PartitionedSketch::k)
      .def("range_of", &PartitionedSketch::range_of, py::arg("worker"))
      .def(
          "worker_update",
          [](PartitionedSketch& self, int worker,
             const std::vector<element_t>& t) {
            self.worker_update(worker, to_bset(t));
          },
          py::arg("worker"), py::arg("transaction"))
      .def(
          "update_all",
          [](PartitionedSketch& self, const std::vector<element_t>& t) {
            self.update_all(to_bset(t));
          },
          py::arg("transaction"))
      .def(
          "reference_update",
          [](PartitionedSketch& self, const std::vector<element_t>& t) {
            self.reference_update(to_bset(t));
          },
          py::arg("transaction"))
      .def(
          "query_frequency",
          [](const PartitionedSketch& self,
             const std::vector<element_t>& itemset) {
            return self.query_frequency(Subset::sorted_unique(itemset));
          },
          py::arg("itemset"))
      .def_property_readonly(
          "counters",
          [](const PartitionedSketch& self) { return self.counters(); });

  m.def(
      "dispatch",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        const int code = dispatch(args, in, out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin_text") = std::string(),
      "run one CLI invocation; returns (exit_code, stdout, stderr)");

  m.attr("MERSENNE61") = kMersenne61;
  m.attr("MAX_HASH_RANGE") = kMaxHashRange;
  m.attr("__version__") = kToolVersion;
}
