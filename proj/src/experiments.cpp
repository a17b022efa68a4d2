// Copyright 2026 The qkonc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkonc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "qkonc/concentration.hpp"
#include "qkonc/error.hpp"
#include "qkonc/heatmap.hpp"
#include "qkonc/kernel.hpp"
#include "qkonc/parallel.hpp"
#include "qkonc/rng.hpp"
#include "qkonc/vqa.hpp"

namespace qkonc {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string to_string(DepthRule rule) {
    return rule == DepthRule::constant ? "constant" : "n";
}

DepthRule depth_rule_from_string(const std::string &text) {
    if (text == "constant" || text == "k")
        return DepthRule::constant;
    if (text == "n" || text == "equal-to-n" || text == "equal_to_n")
        return DepthRule::equal_to_n;
    throw Error(Errc::invalid_argument, "unknown depth rule: " + text);
}

json to_json(const DataSourceSpec &d) {
    switch (d.kind) {
    case DataSourceSpec::Kind::synthetic:
        return json{{"kind", "synthetic"}};
    case DataSourceSpec::Kind::csv:
        return json{{"kind", "csv"}, {"path", d.path}};
    case DataSourceSpec::Kind::idx:
        return json{{"kind", "idx"}, {"images", d.path}, {"labels", d.labels_path}};
    }
    return {};
}

/// Comment line carrying the config, for CSV outputs.
std::string csv_header(const SweepConfig &config) {
    return "# config: " + to_json(config).dump() + "\n";
}

class OutputDir {
  public:
    OutputDir(const SweepConfig &config, CommandOutcome &outcome)
        : dir_(config.out_dir), outcome_(outcome) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        require(!ec, Errc::io_error,
                "cannot create output directory " + dir_.string() + ": " +
                    ec.message());
    }

    void write(const std::string &name, const std::string &content) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), Errc::io_error,
                "cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        require(static_cast<bool>(out), Errc::io_error,
                "write failed: " + path.string());
        outcome_.files.push_back(path.string());
    }

  private:
    std::filesystem::path dir_;
    CommandOutcome &outcome_;
};

/// Loaded once per command; real corpora are large.
std::optional<Dataset> load_corpus(const SweepConfig &config) {
    switch (config.data.kind) {
    case DataSourceSpec::Kind::synthetic:
        return std::nullopt;
    case DataSourceSpec::Kind::csv:
        return load_csv(config.data.path);
    case DataSourceSpec::Kind::idx:
        return load_idx(config.data.path, config.data.labels_path);
    }
    return std::nullopt;
}

Dataset prepare(const SweepConfig &config, const std::optional<Dataset> &corpus,
                std::size_t d) {
    if (!corpus)
        return synthetic_uniform(config.points, d, config.seed);

    Dataset subset;
    if (corpus->labels) {
        subset = filter_binary(*corpus, config.class_a, config.class_b,
                               config.points, config.seed);
    } else {
        const std::size_t take = std::min(config.points, corpus->size());
        subset.features = Matrix(take, corpus->dims());
        for (std::size_t i = 0; i < take; ++i)
            for (std::size_t c = 0; c < corpus->dims(); ++c)
                subset.features(i, c) = corpus->features(i, c);
        subset.provenance = corpus->provenance;
        subset.provenance.push_back(json{{"op", "take_first"}, {"n", take}});
    }
    if (subset.dims() == d)
        return subset;
    require(subset.dims() > d, Errc::dimension_mismatch,
            "data has " + std::to_string(subset.dims()) +
                " features but the encoding needs " + std::to_string(d));

    Dataset reduced;
    if (config.pca_on_corpus) {
        const PcaModel model = pca_fit(*corpus, d);
        reduced.features = model.project(subset.features);
        reduced.labels = subset.labels;
        reduced.provenance = subset.provenance;
        reduced.provenance.push_back(json{{"op", "pca_reduce"},
                                          {"k", d},
                                          {"fitted_on_points", corpus->size()}});
    } else {
        reduced = pca_reduce(subset, d);
    }
    return config.normalize ? normalize_range(reduced) : reduced;
}

GramMatrix gram_for(const SweepConfig &config, const std::optional<Dataset> &corpus,
                    int n, Dataset *used = nullptr) {
    const AnsatzSpec spec = ansatz_for(config, n);
    const Circuit encoding = build_encoding(spec);
    Dataset ds = prepare(config, corpus, static_cast<std::size_t>(encoding.n_data_slots()));
    GramOptions options;
    options.shots = config.shots;
    options.seed = config.seed;
    options.threads = resolve_threads(config.threads);
    GramMatrix g = gram(encoding, ds.features, options);
    if (used)
        *used = std::move(ds);
    return g;
}

std::string per_n_name(const SweepConfig &config, const std::string &stem, int n,
                       const std::string &ext) {
    if (config.qubits.size() == 1)
        return stem + "." + ext;
    return stem + "_n" + std::to_string(n) + "." + ext;
}

// -- verify fixtures ---------------------------------------------------------

template <class F>
ConditionalSamples sample_fixture(std::size_t anchors, std::size_t draws,
                                  std::uint64_t seed, std::uint64_t tag,
                                  Interval domain, F f) {
    ConditionalSamples s;
    s.rows.resize(anchors);
    for (std::size_t i = 0; i < anchors; ++i) {
        Rng anchor_rng = make_stream(seed, tag, i);
        const double x = uniform(anchor_rng, domain.lo, domain.hi);
        Rng draw_rng = make_stream(seed, tag, anchors + i);
        s.rows[i].resize(draws);
        for (std::size_t j = 0; j < draws; ++j)
            s.rows[i][j] = f(x, uniform(draw_rng, domain.lo, domain.hi));
    }
    return s;
}

std::vector<AnsatzSpec> verify_suite(const SweepConfig &config) {
    std::vector<AnsatzSpec> suite;
    if (config.family) {
        for (const int n : config.qubits)
            suite.push_back(ansatz_for(config, n));
        return suite;
    }
    for (int n = 1; n <= 4; ++n)
        suite.push_back({AnsatzFamily::ProductRX, n, 1, Entanglement::full, config.seed});
    for (int n = 2; n <= 6; ++n)
        suite.push_back({AnsatzFamily::HavlicekZZ, n, 2, Entanglement::full, config.seed});
    for (int n = 2; n <= 6; ++n)
        suite.push_back({AnsatzFamily::PermInvariant, n, n, Entanglement::full, config.seed});
    return suite;
}

std::string spec_name(const AnsatzSpec &s) {
    return std::string(to_string(s.family)) + ":n" + std::to_string(s.n_qubits) +
           ":d" + std::to_string(s.depth);
}

} // namespace

DataSourceSpec parse_data_source(const std::string &text) {
    DataSourceSpec d;
    if (text == "synthetic")
        return d;
    if (text.rfind("csv:", 0) == 0 && text.size() > 4) {
        d.kind = DataSourceSpec::Kind::csv;
        d.path = text.substr(4);
        return d;
    }
    if (text.rfind("idx:", 0) == 0) {
        const std::string rest = text.substr(4);
        const auto comma = rest.find(',');
        require(comma != std::string::npos && comma > 0 && comma + 1 < rest.size(),
                Errc::invalid_argument, "idx source needs IMAGES,LABELS: " + text);
        d.kind = DataSourceSpec::Kind::idx;
        d.path = rest.substr(0, comma);
        d.labels_path = rest.substr(comma + 1);
        return d;
    }
    throw Error(Errc::invalid_argument,
                "data source must be synthetic, csv:PATH or idx:IMAGES,LABELS: " + text);
}

std::vector<int> parse_qubit_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    const auto to_int = [&](const std::string &s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == s.size() && !s.empty(), Errc::invalid_argument,
                "bad qubit count '" + s + "' in '" + text + "'");
        return v;
    };
    while (std::getline(ss, item, ',')) {
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        const int lo = to_int(item.substr(0, c1));
        const int hi = to_int(item.substr(c1 + 1, c2 == std::string::npos
                                                      ? std::string::npos
                                                      : c2 - c1 - 1));
        const int step = c2 == std::string::npos ? 1 : to_int(item.substr(c2 + 1));
        require(step > 0, Errc::invalid_argument, "range step must be positive");
        for (int v = lo; v <= hi; v += step)
            out.push_back(v);
    }
    return out;
}

void validate(const SweepConfig &config) {
    require(!config.qubits.empty(), Errc::invalid_argument,
            "qubit list is empty");
    for (std::size_t i = 0; i < config.qubits.size(); ++i) {
        require(config.qubits[i] >= 1, Errc::invalid_argument,
                "qubit counts must be positive");
        require(i == 0 || config.qubits[i] > config.qubits[i - 1],
                Errc::invalid_argument, "qubit list must be strictly increasing");
    }
    require(!config.depth || *config.depth >= 1, Errc::invalid_argument,
            "depth must be >= 1");
    require(config.points >= 1, Errc::invalid_argument, "points must be >= 1");
    require(config.samples >= 2, Errc::invalid_argument, "samples must be >= 2");
    require(config.anchors >= 2, Errc::invalid_argument, "anchors must be >= 2");
    require(config.class_a != config.class_b, Errc::invalid_argument,
            "the two classes must differ");
    for (const double d : config.deltas)
        require(std::isfinite(d) && d > 0.0, Errc::invalid_argument,
                "deltas must be positive");
}

json to_json(const SweepConfig &c) {
    return json{
        {"ansatz", c.family ? json(std::string(to_string(*c.family))) : json(nullptr)},
        {"entanglement", std::string(to_string(c.entanglement))},
        {"depth_rule", to_string(c.depth_rule)},
        // Resolved: the family default when unset; irrelevant under the n rule.
        {"depth", c.depth_rule == DepthRule::equal_to_n ? json(nullptr)
                                                        : json(depth_for(c, 0))},
        {"qubits", c.qubits},
        {"data", to_json(c.data)},
        {"classes", {c.class_a, c.class_b}},
        {"points", c.points},
        {"shots", c.shots},
        {"samples", c.samples},
        {"anchors", c.anchors},
        {"seed", c.seed},
        {"deltas", c.deltas},
        {"pca_fit", c.pca_on_corpus ? "corpus" : "subset"},
        {"normalize", c.normalize},
        {"inject_asymmetric", c.inject_asymmetric},
    };
}

SweepConfig sweep_config_from_json(const json &j, SweepConfig c) {
    require(j.is_object(), Errc::format_error, "config must be a JSON object");
    try {
        if (j.contains("ansatz")) {
            if (j["ansatz"].is_null())
                c.family.reset();
            else
                c.family = ansatz_family_from_string(j["ansatz"].get<std::string>());
        }
        if (j.contains("entanglement"))
            c.entanglement = entanglement_from_string(j["entanglement"].get<std::string>());
        if (j.contains("depth_rule"))
            c.depth_rule = depth_rule_from_string(j["depth_rule"].get<std::string>());
        if (j.contains("depth")) {
            if (j["depth"].is_null())
                c.depth.reset();
            else
                c.depth = j["depth"].get<int>();
        }
        if (j.contains("qubits")) {
            if (j["qubits"].is_string())
                c.qubits = parse_qubit_list(j["qubits"].get<std::string>());
            else
                c.qubits = j["qubits"].get<std::vector<int>>();
        }
        if (j.contains("data")) {
            const json &d = j["data"];
            if (d.is_string()) {
                c.data = parse_data_source(d.get<std::string>());
            } else {
                const std::string kind = d.at("kind").get<std::string>();
                if (kind == "synthetic")
                    c.data = {};
                else if (kind == "csv")
                    c.data = parse_data_source("csv:" + d.at("path").get<std::string>());
                else
                    c.data = parse_data_source("idx:" + d.at("images").get<std::string>() +
                                               "," + d.at("labels").get<std::string>());
            }
        }
        if (j.contains("classes")) {
            const auto cls = j["classes"].get<std::vector<int>>();
            require(cls.size() == 2, Errc::format_error, "classes needs two labels");
            c.class_a = cls[0];
            c.class_b = cls[1];
        }
        if (j.contains("points"))
            c.points = j["points"].get<std::size_t>();
        if (j.contains("shots"))
            c.shots = j["shots"].get<std::uint64_t>();
        if (j.contains("samples"))
            c.samples = j["samples"].get<std::size_t>();
        if (j.contains("anchors"))
            c.anchors = j["anchors"].get<std::size_t>();
        if (j.contains("seed"))
            c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("deltas"))
            c.deltas = j["deltas"].get<std::vector<double>>();
        if (j.contains("threads"))
            c.threads = j["threads"].get<unsigned>();
        if (j.contains("out"))
            c.out_dir = j["out"].get<std::string>();
        if (j.contains("pca_fit")) {
            const auto v = j["pca_fit"].get<std::string>();
            require(v == "subset" || v == "corpus", Errc::format_error,
                    "pca_fit must be subset or corpus");
            c.pca_on_corpus = v == "corpus";
        }
        if (j.contains("normalize"))
            c.normalize = j["normalize"].get<bool>();
        if (j.contains("inject_asymmetric"))
            c.inject_asymmetric = j["inject_asymmetric"].get<bool>();
    } catch (const json::exception &e) {
        throw Error(Errc::format_error, std::string("bad config: ") + e.what());
    }
    return c;
}

int depth_for(const SweepConfig &config, int n) {
    if (config.depth_rule == DepthRule::equal_to_n)
        return n;
    if (config.depth)
        return *config.depth;
    return config.family.value_or(AnsatzFamily::HavlicekZZ) == AnsatzFamily::HavlicekZZ
               ? 2
               : 1;
}

AnsatzSpec ansatz_for(const SweepConfig &config, int n) {
    AnsatzSpec s;
    s.family = config.family.value_or(AnsatzFamily::HavlicekZZ);
    s.n_qubits = n;
    s.depth = depth_for(config, n);
    s.entanglement = config.entanglement;
    s.seed = config.seed;
    return s;
}

Dataset dataset_for(const SweepConfig &config, int n, std::size_t d) {
    (void)n;
    return prepare(config, load_corpus(config), d);
}

CommandOutcome run_gram(const SweepConfig &config) {
    validate(config);
    CommandOutcome outcome;
    OutputDir out(config, outcome);
    const auto corpus = load_corpus(config);
    json summary = json::array();
    for (const int n : config.qubits) {
        Dataset used;
        const GramMatrix g = gram_for(config, corpus, n, &used);
        out.write(per_n_name(config, "gram", n, "csv"),
                  csv_header(config) + gram_to_csv(g));
        json j{{"config", to_json(config)},
               {"gram", to_json(g)},
               {"dataset", used.provenance}};
        out.write(per_n_name(config, "gram", n, "json"), j.dump(2) + "\n");
        std::string svg = render_heatmap_svg(
            g.entries, spec_name(ansatz_for(config, n)) + " kernel, " +
                           std::to_string(g.entries.rows()) + " points");
        svg.insert(svg.find('\n') + 1,
                   "<!-- config: " + to_json(config).dump() + " -->\n");
        out.write(per_n_name(config, "gram", n, "svg"), svg);
        summary.push_back({{"n", n}, {"points", g.entries.rows()}});
    }
    outcome.summary = summary;
    return outcome;
}

CommandOutcome run_sweep(const SweepConfig &config, const SweepHooks &hooks) {
    validate(config);
    require(config.qubits.size() >= 3, Errc::invalid_argument,
            "sweep needs at least 3 qubit counts");
    CommandOutcome outcome;
    const auto corpus = load_corpus(config);

    std::vector<ConcentrationReport> reports;
    std::vector<SpectrumReport> spectra;
    std::vector<DecayPoint> points;
    for (const int n : config.qubits) {
        const GramMatrix g = gram_for(config, corpus, n);
        ConcentrationReport r = concentration_report(g, config.deltas);
        if (hooks.variance_override)
            if (const auto v = hooks.variance_override(n))
                r.variance = *v;
        points.push_back({n, r.variance});
        spectra.push_back(spectrum_flatness(g));
        reports.push_back(std::move(r));
    }
    const DecayFit fit = fit_decay(points);

    OutputDir out(config, outcome);
    std::ostringstream csv;
    csv << csv_header(config);
    csv << "n,var_total,var_cond_min,var_cond_max,mu,b_fit,flatness\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto &r = reports[i];
        csv << config.qubits[i] << ',' << num(r.variance) << ','
            << num(r.conditional_min) << ',' << num(r.conditional_max) << ','
            << num(r.mean) << ',' << num(fit.base) << ','
            << num(spectra[i].flatness) << '\n';
    }
    out.write("sweep.csv", csv.str());

    json per_n = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        json entry = to_json(reports[i]);
        entry["flatness"] = spectra[i].flatness;
        per_n.push_back(entry);
    }
    json j{{"config", to_json(config)}, {"fit", to_json(fit)}, {"reports", per_n}};
    out.write("fit.json", j.dump(2) + "\n");
    outcome.summary = to_json(fit);
    return outcome;
}

CommandOutcome run_verify(const SweepConfig &config) {
    if (config.family)
        validate(config);
    CommandOutcome outcome;
    const unsigned threads = resolve_threads(config.threads);

    json checks = json::array();
    const auto record = [&](const std::string &name, const LemmaReport &r) {
        json entry{{"name", name}, {"pass", r.pass()}, {"report", to_json(r)}};
        checks.push_back(entry);
        if (!r.upper_pass)
            outcome.failures.push_back(name + ": total variance above 2 x max conditional");
        if (!r.lower_pass)
            outcome.failures.push_back(name + ": total variance below min conditional");
    };

    const std::size_t anchors = config.anchors;
    const std::size_t draws = config.samples;
    record("cos_difference",
           lemma_check(sample_fixture(anchors, draws, config.seed, 0xC05,
                                      default_domain(),
                                      [](double x, double y) { return std::cos(x - y); })));
    record("product_on_unit_square",
           lemma_check(sample_fixture(anchors, draws, config.seed, 0x9D,
                                      Interval{-1.0, 1.0},
                                      [](double x, double y) { return x * y; })));
    record("constant",
           lemma_check(sample_fixture(anchors, draws, config.seed, 0xC0,
                                      default_domain(),
                                      [](double, double) { return 0.3; })));
    if (config.inject_asymmetric) {
        record("asymmetric_injected",
               lemma_check(sample_fixture(anchors, draws, config.seed, 0xA5,
                                          default_domain(),
                                          [](double x, double) { return x; })));
    }

    json theorems = json::array();
    TheoremCheckConfig tc;
    tc.anchors = anchors;
    tc.draws = draws;
    tc.seed = config.seed;
    tc.threads = threads;
    for (const AnsatzSpec &spec : verify_suite(config)) {
        const TheoremReport r = theorem_check(spec, tc);
        const std::string name = "kernel:" + spec_name(spec);
        record(name, r.kernel);
        theorems.push_back(to_json(r));
        if (!r.identity_bit_exact)
            outcome.failures.push_back(
                "theorem:" + spec_name(spec) +
                ": conditional kernel variance differs from cost variance");
        if (!r.pass && r.identity_bit_exact && r.kernel.pass())
            outcome.failures.push_back("theorem:" + spec_name(spec) +
                                       ": kernel routes disagree (gap " +
                                       num(r.max_route_gap) + ")");
    }

    const bool pass = outcome.failures.empty();
    OutputDir out(config, outcome);
    out.write("lemmas.json",
              json{{"config", to_json(config)}, {"checks", checks}, {"pass", pass}}
                      .dump(2) +
                  "\n");
    out.write("theorem.json",
              json{{"config", to_json(config)}, {"reports", theorems}, {"pass", pass}}
                      .dump(2) +
                  "\n");
    outcome.exit_code = pass ? 0 : 1;
    outcome.summary = json{{"pass", pass}, {"failures", outcome.failures}};
    return outcome;
}

CommandOutcome run_bp_scan(const SweepConfig &config) {
    validate(config);
    CommandOutcome outcome;
    MonteCarloOptions mc;
    mc.samples = config.samples;
    mc.seed = config.seed;
    mc.threads = resolve_threads(config.threads);

    std::ostringstream csv;
    csv << csv_header(config);
    csv << "n,n_params,grad_var_max,grad_var_max_se,grad_var_mean,cost_mean,"
           "cost_var,cost_var_se\n";
    json summary = json::array();
    for (const int n : config.qubits) {
        const AnsatzSpec spec = ansatz_for(config, n);
        const Circuit circuit = build_ansatz(spec);
        std::vector<double> x;
        std::optional<CostSpec> cost_spec;
        if (circuit.n_theta_slots() > 0 && circuit.n_data_slots() == 0) {
            cost_spec = CostSpec::variational_only(circuit);
        } else {
            // Kernel-construction mode at one random anchor.
            cost_spec = CostSpec::kernel_construction(build_encoding(spec));
            Rng rng = make_stream(config.seed, 0xB9, static_cast<std::uint64_t>(n));
            x.resize(static_cast<std::size_t>(cost_spec->n_data()));
            for (double &v : x)
                v = uniform(rng, -kPi, kPi);
        }
        const BpVarianceReport bp = bp_variance(*cost_spec, x, mc);
        const CostConcentrationReport cc = cost_concentration(*cost_spec, x, mc);
        csv << n << ',' << cost_spec->n_params() << ',' << num(bp.max_variance)
            << ',' << num(bp.max_variance_se) << ',' << num(bp.mean_variance)
            << ',' << num(cc.cost.mean) << ',' << num(cc.cost.variance) << ','
            << num(cc.cost.se_variance) << '\n';
        summary.push_back({{"n", n},
                           {"grad_var_max", bp.max_variance},
                           {"cost_var", cc.cost.variance}});
    }
    OutputDir out(config, outcome);
    out.write("bp.csv", csv.str());
    outcome.summary = summary;
    return outcome;
}

CommandOutcome run_spectrum(const SweepConfig &config) {
    validate(config);
    CommandOutcome outcome;
    const auto corpus = load_corpus(config);
    std::ostringstream csv;
    csv << csv_header(config);
    csv << "n,index,eigenvalue\n";
    json per_n = json::array();
    for (const int n : config.qubits) {
        const SpectrumReport s = spectrum_flatness(gram_for(config, corpus, n));
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            csv << n << ',' << i << ',' << num(s.eigenvalues[i]) << '\n';
        json entry = to_json(s);
        entry["n"] = n;
        per_n.push_back(entry);
    }
    OutputDir out(config, outcome);
    out.write("spectrum.csv", csv.str());
    out.write("spectrum.json",
              json{{"config", to_json(config)}, {"spectra", per_n}}.dump(2) + "\n");
    outcome.summary = per_n;
    return outcome;
}

} // namespace qkonc
