#include "cssample/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "cssample/common.hpp"
#include "cssample/estimators.hpp"
#include "cssample/graphs.hpp"
#include "cssample/hashing.hpp"
#include "cssample/io.hpp"
#include "cssample/sampler.hpp"
#include "cssample/sketch.hpp"
#include "cssample/subset.hpp"

namespace css {

namespace {

using ordered_json = nlohmann::ordered_json;
using FlagMap = std::map<std::string, std::string>;

std::string read_all(const std::string& spec, std::istream& stdin_stream) {
  std::ostringstream buffer;
  if (spec == "-") {
    buffer << stdin_stream.rdbuf();
  } else {
    std::ifstream file(spec, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open input '" + spec + "'");
    buffer << file.rdbuf();
  }
  return std::move(buffer).str();
}

std::string hex_digest(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(what + " must be a non-negative integer, got '" +
                                std::string(text) + "'");
  }
  return value;
}

// "LO:HI", half-open, within [0, q].
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text,
                                                    std::uint64_t q) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("--range must have the form LO:HI");
  }
  const std::uint64_t lo = parse_u64(text.substr(0, colon), "range LO");
  const std::uint64_t hi = parse_u64(text.substr(colon + 1), "range HI");
  if (lo >= hi || hi > q) {
    throw std::invalid_argument(
        "--range requires LO < HI <= q (half-open bucket window)");
  }
  return {lo, hi};
}

Subset parse_itemset(const std::string& text, int k) {
  std::vector<element_t> elems;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::uint64_t v =
        parse_u64(std::string_view(text).substr(pos, comma - pos),
                  "query item");
    if (v >= kMersenne61) {
      throw std::invalid_argument("query item must be below 2^61 - 1");
    }
    elems.push_back(v);
    pos = comma + 1;
  }
  Subset s = Subset::sorted_unique(std::move(elems));
  if (static_cast<int>(s.size()) != k) {
    throw std::invalid_argument("--query must name exactly " +
                                std::to_string(k) + " distinct items");
  }
  return s;
}

ordered_json make_manifest(const std::string& subcommand, const FlagMap& flags,
                           std::uint64_t seed, std::uint64_t digest) {
  ordered_json m;
  m["tool"] = "cssample";
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  ordered_json f = ordered_json::object();
  for (const auto& [key, value] : flags) f[key] = value;
  m["flags"] = f;
  m["seed"] = seed;
  m["input_digest"] = hex_digest(digest);
  return m;
}

void append_estimate_fields(ordered_json& doc, const EstimateReport& r,
                            const std::string& value_key) {
  doc["alpha_hat"] =
      r.alpha_hat ? ordered_json(*r.alpha_hat) : ordered_json(nullptr);
  doc["z_hat"] = r.z_hat ? ordered_json(*r.z_hat) : ordered_json(nullptr);
  doc[value_key] = r.f_hat ? ordered_json(*r.f_hat) : ordered_json(nullptr);
  ordered_json runs = ordered_json::array();
  for (const auto& d : r.runs) {
    runs.push_back({{"copy", d.copy},
                    {"run", d.run},
                    {"guess", d.guess},
                    {"range", d.range},
                    {"sampled_distinct", d.sampled_distinct},
                    {"sentinel", d.sentinel}});
  }
  doc["runs"] = std::move(runs);
  ordered_json copies = ordered_json::array();
  for (const auto& c : r.copies) {
    copies.push_back(
        {{"copy", c.copy},
         {"sentinel", c.sentinel},
         {"chosen_run", c.chosen_run},
         {"alpha_hat",
          c.alpha_hat ? ordered_json(*c.alpha_hat) : ordered_json(nullptr)},
         {"z_hat", c.z_hat ? ordered_json(*c.z_hat) : ordered_json(nullptr)}});
  }
  doc["copies"] = std::move(copies);
}

void emit_report(std::ostream& out, const ordered_json& doc) {
  out << doc.dump(2) << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err) {
  CLI::App app{"consistent sampling of k-subsets from transaction and "
               "incidence streams"};
  app.name("cssample");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // sample
  std::string s_input;
  int s_k = 0;
  std::uint64_t s_q = 1, s_seed = 0;
  int s_tradeoff = 0;
  std::string s_range;
  auto* sample = app.add_subcommand(
      "sample", "list the sampled k-subsets of every transaction");
  sample->add_option("--input", s_input, "transaction file, or - for stdin")
      ->required();
  sample->add_option("--k", s_k, "subset size")->required();
  sample->add_option("--q", s_q, "hash range")->required();
  sample->add_option("--seed", s_seed, "master seed")->required();
  auto* s_tradeoff_opt = sample->add_option(
      "--tradeoff", s_tradeoff, "fix the L largest elements of each half");
  auto* s_range_opt = sample->add_option(
      "--range", s_range, "emit bucket window LO:HI instead (half-open)");
  s_tradeoff_opt->excludes(s_range_opt);
  s_range_opt->excludes(s_tradeoff_opt);

  // estimate
  std::string e_input;
  int e_k = 0;
  double e_alpha = 0, e_epsilon = 0, e_delta = 0;
  std::uint64_t e_minsup = 0, e_m = 0, e_bmax = 0, e_seed = 0;
  std::uint64_t e_force_q = 0, e_force_s = 0;
  auto* estimate = app.add_subcommand(
      "estimate", "estimate the number of frequent k-itemsets in one pass");
  estimate->add_option("--input", e_input, "transaction file, or - for stdin")
      ->required();
  estimate->add_option("--k", e_k, "itemset size")->required();
  estimate->add_option("--alpha", e_alpha, "admissible frequent/distinct ratio")
      ->required();
  estimate->add_option("--epsilon", e_epsilon, "relative error target")
      ->required();
  estimate->add_option("--delta", e_delta, "failure probability target")
      ->required();
  estimate->add_option("--min-support", e_minsup, "frequency threshold")
      ->required();
  estimate->add_option("--m", e_m, "declared stream length bound")->required();
  estimate->add_option("--b-max", e_bmax, "declared transaction size bound")
      ->required();
  estimate->add_option("--seed", e_seed, "master seed")->required();
  auto* e_force_q_opt = estimate->add_option(
      "--force-q", e_force_q, "test hook: pin every run's hash range");
  auto* e_force_s_opt = estimate->add_option(
      "--force-s", e_force_s, "test hook: pin the sample-size target");

  // oracle
  std::string o_input;
  int o_k = 0;
  std::uint64_t o_minsup = 0;
  auto* oracle = app.add_subcommand(
      "oracle", "exact frequent/distinct itemset counts (desk scale)");
  oracle->add_option("--input", o_input, "transaction file, or - for stdin")
      ->required();
  oracle->add_option("--k", o_k, "itemset size")->required();
  oracle->add_option("--min-support", o_minsup, "frequency threshold")
      ->required();

  // graph cliques / bicliques
  auto* graph =
      app.add_subcommand("graph", "estimators over incidence streams");
  graph->require_subcommand(1);

  std::string gc_input;
  int gc_k = 0;
  double gc_gamma = 0, gc_epsilon = 0, gc_delta = 0;
  std::uint64_t gc_maxdeg = 0, gc_seed = 0;
  std::uint64_t gc_force_q = 0, gc_force_s = 0;
  bool gc_oracle = false;
  auto* cliques =
      graph->add_subcommand("cliques", "estimate the number of k-cliques");
  cliques->add_option("--input", gc_input, "incidence file, or - for stdin")
      ->required();
  cliques->add_option("--k", gc_k, "clique size")->required();
  cliques->add_option("--gamma", gc_gamma, "admissible clique/star ratio")
      ->required();
  cliques->add_option("--epsilon", gc_epsilon, "relative error target")
      ->required();
  cliques->add_option("--delta", gc_delta, "failure probability target")
      ->required();
  cliques->add_option("--max-degree", gc_maxdeg, "declared degree bound")
      ->required();
  cliques->add_option("--seed", gc_seed, "master seed")->required();
  cliques->add_flag("--oracle", gc_oracle, "also report exact counts");
  auto* gc_force_q_opt = cliques->add_option(
      "--force-q", gc_force_q, "test hook: pin every run's hash range");
  auto* gc_force_s_opt = cliques->add_option(
      "--force-s", gc_force_s, "test hook: pin the sample-size target");

  std::string gb_input;
  int gb_j = 0;
  double gb_gamma = 0, gb_epsilon = 0, gb_delta = 0;
  std::uint64_t gb_minleft = 0, gb_maxdeg = 0, gb_seed = 0;
  std::uint64_t gb_force_q = 0, gb_force_s = 0;
  bool gb_oracle = false;
  auto* bicliques = graph->add_subcommand(
      "bicliques", "estimate the number of j-adjacencies with enough support");
  bicliques->add_option("--input", gb_input, "incidence file, or - for stdin")
      ->required();
  bicliques->add_option("--j", gb_j, "adjacency (right side) size")->required();
  bicliques->add_option("--min-left", gb_minleft, "left-side support threshold")
      ->required();
  bicliques->add_option("--gamma", gb_gamma, "admissible ratio")->required();
  bicliques->add_option("--epsilon", gb_epsilon, "relative error target")
      ->required();
  bicliques->add_option("--delta", gb_delta, "failure probability target")
      ->required();
  bicliques->add_option("--max-degree", gb_maxdeg, "declared degree bound")
      ->required();
  bicliques->add_option("--seed", gb_seed, "master seed")->required();
  bicliques->add_flag("--oracle", gb_oracle, "also report exact counts");
  auto* gb_force_q_opt = bicliques->add_option(
      "--force-q", gb_force_q, "test hook: pin every run's hash range");
  auto* gb_force_s_opt = bicliques->add_option(
      "--force-s", gb_force_s, "test hook: pin the sample-size target");

  // sketch
  std::string sk_input, sk_kind, sk_query;
  int sk_k = 0, sk_depth = 0, sk_workers = 0;
  std::uint64_t sk_width = 0, sk_seed = 0;
  auto* sketch = app.add_subcommand(
      "sketch", "range-partitioned frequency sketch over k-itemsets");
  sketch->add_option("--input", sk_input, "transaction file, or - for stdin")
      ->required();
  sketch->add_option("--k", sk_k, "itemset size")->required();
  sketch->add_option("--width", sk_width, "buckets per row")->required();
  sketch->add_option("--depth", sk_depth, "number of rows")->required();
  sketch->add_option("--workers", sk_workers, "bucket-range partitions")
      ->required();
  sketch->add_option("--kind", sk_kind, "countmin or countsketch")
      ->required()
      ->check(CLI::IsMember({"countmin", "countsketch"}));
  sketch->add_option("--seed", sk_seed, "master seed")->required();
  auto* sk_query_opt = sketch->add_option(
      "--query", sk_query, "comma-separated itemset to look up");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (sample->parsed()) {
      if (s_k < 2) throw std::invalid_argument("--k must be at least 2");
      const PolynomialHash h = make_hash(s_seed, s_k, s_q);
      std::optional<std::pair<std::uint64_t, std::uint64_t>> window;
      FlagMap flags{{"input", s_input},
                    {"k", std::to_string(s_k)},
                    {"q", std::to_string(s_q)},
                    {"seed", std::to_string(s_seed)}};
      if (s_range_opt->count() > 0) {
        window = parse_range(s_range, s_q);
        flags["range"] = s_range;
      }
      if (s_tradeoff_opt->count() > 0) {
        if (s_tradeoff < 0 || s_tradeoff > s_k / 2) {
          throw std::invalid_argument(
              "--tradeoff must lie in [0, floor(k/2)]");
        }
        flags["tradeoff"] = std::to_string(s_tradeoff);
      }
      const std::string bytes = read_all(s_input, in);
      std::istringstream src(bytes);
      const auto transactions = read_transactions(src);
      out << make_manifest("sample", flags, s_seed, fnv1a64(bytes)).dump()
          << "\n";
      for (std::size_t i = 0; i < transactions.size(); ++i) {
        std::vector<Subset> subsets;
        if (window) {
          subsets = sample_bset_range(transactions[i], h, s_k, window->first,
                                      window->second - window->first);
        } else if (s_tradeoff_opt->count() > 0) {
          subsets = sample_bset_tradeoff(transactions[i], h, s_k, s_tradeoff);
        } else {
          subsets = sample_bset(transactions[i], h, s_k);
        }
        ordered_json line;
        line["transaction"] = i + 1;
        ordered_json arr = ordered_json::array();
        for (const auto& s : subsets) arr.push_back(s.vec());
        line["subsets"] = std::move(arr);
        out << line.dump() << "\n";
      }
      return 0;
    }

    if (estimate->parsed()) {
      EstimatorConfig cfg;
      cfg.k = e_k;
      cfg.alpha = e_alpha;
      cfg.epsilon = e_epsilon;
      cfg.delta = e_delta;
      cfg.m = e_m;
      cfg.b_max = e_bmax;
      cfg.master_seed = e_seed;
      cfg.predicate = min_support_predicate(e_minsup);
      if (e_force_q_opt->count() > 0) cfg.force_q = e_force_q;
      if (e_force_s_opt->count() > 0) cfg.force_s = e_force_s;
      cfg.validate();
      FlagMap flags{{"input", e_input},
                    {"k", std::to_string(e_k)},
                    {"alpha", format_double(e_alpha)},
                    {"epsilon", format_double(e_epsilon)},
                    {"delta", format_double(e_delta)},
                    {"min-support", std::to_string(e_minsup)},
                    {"m", std::to_string(e_m)},
                    {"b-max", std::to_string(e_bmax)},
                    {"seed", std::to_string(e_seed)}};
      if (cfg.force_q) flags["force-q"] = std::to_string(*cfg.force_q);
      if (cfg.force_s) flags["force-s"] = std::to_string(*cfg.force_s);
      const std::string bytes = read_all(e_input, in);
      std::istringstream src(bytes);
      const auto transactions = read_transactions(src, e_bmax);
      const EstimateReport report = estimate_frequent_itemsets(transactions, cfg);
      ordered_json doc;
      doc["manifest"] = make_manifest("estimate", flags, e_seed, fnv1a64(bytes));
      append_estimate_fields(doc, report, "f_hat");
      emit_report(out, doc);
      return report.failed() ? 1 : 0;
    }

    if (oracle->parsed()) {
      if (o_k < 2) throw std::invalid_argument("--k must be at least 2");
      const std::string bytes = read_all(o_input, in);
      std::istringstream src(bytes);
      const auto transactions = read_transactions(src);
      const ExactCounts counts = exact_count_oracle(
          transactions, o_k, min_support_predicate(o_minsup));
      ordered_json doc;
      doc["manifest"] = make_manifest(
          "oracle",
          {{"input", o_input},
           {"k", std::to_string(o_k)},
           {"min-support", std::to_string(o_minsup)}},
          0, fnv1a64(bytes));
      doc["f"] = counts.interesting;
      doc["z"] = counts.distinct;
      emit_report(out, doc);
      return 0;
    }

    if (cliques->parsed()) {
      FlagMap flags{{"input", gc_input},
                    {"k", std::to_string(gc_k)},
                    {"gamma", format_double(gc_gamma)},
                    {"epsilon", format_double(gc_epsilon)},
                    {"delta", format_double(gc_delta)},
                    {"max-degree", std::to_string(gc_maxdeg)},
                    {"seed", std::to_string(gc_seed)}};
      if (gc_oracle) flags["oracle"] = "true";
      std::optional<std::uint64_t> fq, fs;
      if (gc_force_q_opt->count() > 0) {
        fq = gc_force_q;
        flags["force-q"] = std::to_string(gc_force_q);
      }
      if (gc_force_s_opt->count() > 0) {
        fs = gc_force_s;
        flags["force-s"] = std::to_string(gc_force_s);
      }
      const std::string bytes = read_all(gc_input, in);
      std::istringstream src(bytes);
      const IncidenceStream g = read_incidence(src, gc_maxdeg);
      const EstimateReport report =
          estimate_cliques(g, gc_k, gc_gamma, gc_epsilon, gc_delta, gc_maxdeg,
                           gc_seed, fq, fs);
      ordered_json doc;
      doc["manifest"] =
          make_manifest("graph cliques", flags, gc_seed, fnv1a64(bytes));
      append_estimate_fields(doc, report, "k_cliques_hat");
      if (gc_oracle) {
        const CliqueCounts counts = exact_clique_counts(g, gc_k);
        doc["oracle"] = {{"k_cliques", counts.cliques},
                         {"stars", counts.stars}};
      }
      emit_report(out, doc);
      return report.failed() ? 1 : 0;
    }

    if (bicliques->parsed()) {
      FlagMap flags{{"input", gb_input},
                    {"j", std::to_string(gb_j)},
                    {"min-left", std::to_string(gb_minleft)},
                    {"gamma", format_double(gb_gamma)},
                    {"epsilon", format_double(gb_epsilon)},
                    {"delta", format_double(gb_delta)},
                    {"max-degree", std::to_string(gb_maxdeg)},
                    {"seed", std::to_string(gb_seed)}};
      if (gb_oracle) flags["oracle"] = "true";
      std::optional<std::uint64_t> fq, fs;
      if (gb_force_q_opt->count() > 0) {
        fq = gb_force_q;
        flags["force-q"] = std::to_string(gb_force_q);
      }
      if (gb_force_s_opt->count() > 0) {
        fs = gb_force_s;
        flags["force-s"] = std::to_string(gb_force_s);
      }
      const std::string bytes = read_all(gb_input, in);
      std::istringstream src(bytes);
      const IncidenceStream g = read_incidence(src, gb_maxdeg);
      const EstimateReport report =
          estimate_bicliques(g, gb_minleft, gb_j, gb_gamma, gb_epsilon,
                             gb_delta, gb_maxdeg, gb_seed, fq, fs);
      ordered_json doc;
      doc["manifest"] =
          make_manifest("graph bicliques", flags, gb_seed, fnv1a64(bytes));
      append_estimate_fields(doc, report, "bicliques_hat");
      if (gb_oracle) {
        const BicliqueCounts counts =
            exact_biclique_counts(g, gb_minleft, gb_j);
        doc["oracle"] = {{"bicliques", counts.bicliques},
                         {"adjacencies", counts.adjacencies}};
      }
      emit_report(out, doc);
      return report.failed() ? 1 : 0;
    }

    if (sketch->parsed()) {
      const SketchKind kind = sk_kind == "countmin" ? SketchKind::count_min
                                                    : SketchKind::count_sketch;
      PartitionedSketch sk(kind, sk_depth, sk_width, sk_workers, sk_k,
                           sk_seed);
      std::optional<Subset> query;
      FlagMap flags{{"input", sk_input},
                    {"k", std::to_string(sk_k)},
                    {"width", std::to_string(sk_width)},
                    {"depth", std::to_string(sk_depth)},
                    {"workers", std::to_string(sk_workers)},
                    {"kind", sk_kind},
                    {"seed", std::to_string(sk_seed)}};
      if (sk_query_opt->count() > 0) {
        query = parse_itemset(sk_query, sk_k);
        flags["query"] = sk_query;
      }
      const std::string bytes = read_all(sk_input, in);
      std::istringstream src(bytes);
      const auto transactions = read_transactions(src);
      for (const auto& t : transactions) sk.update_all(t);
      ordered_json doc;
      doc["manifest"] =
          make_manifest("sketch", flags, sk_seed, fnv1a64(bytes));
      doc["kind"] = sk_kind;
      doc["depth"] = sk_depth;
      doc["width"] = sk_width;
      doc["workers"] = sk_workers;
      doc["counters"] = sk.counters();
      if (query) {
        doc["query"] = query->vec();
        doc["estimate"] = sk.query_frequency(*query);
      }
      emit_report(out, doc);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace css
