// raonet: interdisciplinarity indicators on directed, weighted citation
// networks. Subcommands compose the library into the usual workflows:
// summary statistics, betweenness, diversity tables, decomposition,
// neighborhood extraction, correlation and ANOVA over the per-node tables.

#include "raonet/centrality.hpp"
#include "raonet/diversity.hpp"
#include "raonet/graph.hpp"
#include "raonet/manifest.hpp"
#include "raonet/netio.hpp"
#include "raonet/parallel.hpp"
#include "raonet/stats.hpp"
#include "raonet/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

namespace fs = std::filesystem;
using raonet::graph::CitationNetwork;

namespace {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    return out;
}

CitationNetwork load_network(const std::string& path) {
    std::ifstream in = open_input(path);
    return raonet::graph::build(raonet::netio::parse_net(in));
}

std::vector<int> load_partition(const std::string& path, const CitationNetwork& net) {
    std::ifstream in = open_input(path);
    return raonet::netio::parse_clu(in, net.size()).group_of;
}

std::unordered_map<std::string, std::uint32_t> label_index(const CitationNetwork& net) {
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < net.size(); ++i) index.emplace(net.label(i), i);
    return index;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(csv);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<std::uint32_t> resolve_labels(const CitationNetwork& net,
                                          const std::vector<std::string>& labels) {
    auto index = label_index(net);
    std::vector<std::uint32_t> nodes;
    for (const std::string& label : labels) {
        auto hit = index.find(label);
        if (hit == index.end()) throw DataError("unknown label '" + label + "'");
        nodes.push_back(hit->second);
    }
    return nodes;
}

std::vector<std::uint32_t> resolve_groups(std::span<const int> partition,
                                          const std::vector<int>& groups) {
    std::vector<std::uint32_t> nodes;
    for (std::uint32_t i = 0; i < partition.size(); ++i)
        if (std::find(groups.begin(), groups.end(), partition[i]) != groups.end())
            nodes.push_back(i);
    return nodes;
}

std::uint32_t resolve_focal(const CitationNetwork& net, const std::string& name) {
    auto index = label_index(net);
    auto hit = index.find(name);
    if (hit != index.end()) return hit->second;
    try {
        std::size_t pos = 0;
        unsigned long id = std::stoul(name, &pos);
        if (pos == name.size() && id >= 1 && id <= net.size())
            return static_cast<std::uint32_t>(id - 1);
    } catch (const std::exception&) {
    }
    throw DataError("unknown node '" + name + "'");
}

// --- report writers -------------------------------------------------------

const std::vector<std::string> kDiversityHeader = {
    "node", "label", "delta_cited", "d2_cited", "delta_citing",
    "d2_citing", "sum_cited", "sum_citing"};

std::vector<raonet::netio::Row> diversity_rows(
    const std::vector<raonet::diversity::DiversityRecord>& records) {
    using raonet::netio::numeric_cell;
    std::vector<raonet::netio::Row> rows;
    rows.reserve(records.size());
    for (const auto& rec : records)
        rows.push_back({static_cast<std::int64_t>(rec.node + 1), rec.label, rec.delta_cited,
                        rec.d2_cited, rec.delta_citing, rec.d2_citing, numeric_cell(rec.sum_cited),
                        numeric_cell(rec.sum_citing)});
    return rows;
}

void write_diversity_csv(const std::string& path,
                         const std::vector<raonet::diversity::DiversityRecord>& records,
                         int precision) {
    std::ofstream out = open_output(path);
    raonet::netio::write_report(out, kDiversityHeader, diversity_rows(records), precision);
}

void write_bc_csv(const std::string& path, const CitationNetwork& net,
                  const std::vector<raonet::centrality::CentralityRecord>& records, bool valued,
                  int precision) {
    std::vector<std::string> header = {"node", "label", "bc_raw", "bc_normalized"};
    if (valued) {
        header.push_back("bc_valued_raw");
        header.push_back("bc_valued_normalized");
    }
    std::vector<raonet::netio::Row> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        raonet::netio::Row row = {static_cast<std::int64_t>(rec.node + 1), net.label(rec.node),
                                  rec.bc_raw, rec.bc_normalized};
        if (valued) {
            row.push_back(rec.bc_valued_raw);
            row.push_back(rec.bc_valued_normalized);
        }
        rows.push_back(std::move(row));
    }
    std::ofstream out = open_output(path);
    raonet::netio::write_report(out, header, rows, precision);
}

void print_top_table(const CitationNetwork& net, std::span<const double> values,
                     const std::string& title, std::size_t top) {
    auto ranked = raonet::centrality::rank_table(values, net.labels());
    std::cout << title << "\n";
    for (std::size_t i = 0; i < std::min(top, ranked.size()); ++i)
        std::cout << "  " << ranked[i].rank << ". " << net.label(ranked[i].node) << "  "
                  << raonet::netio::format_real(ranked[i].value, 6) << "\n";
}

// --- shared manifest plumbing ----------------------------------------------

struct RunContext {
    raonet::manifest::RunManifest manifest;
    std::string manifest_path;

    void finish() {
        if (manifest.outputs.empty()) return;
        if (manifest_path.empty())
            manifest_path = raonet::manifest::default_path(manifest.outputs.front());
        raonet::manifest::write(manifest, manifest_path);
    }
};

// --- subcommand state -------------------------------------------------------

struct CommonOptions {
    int threads = 0;
    int precision = 6;
    std::string manifest_path;
};

void print_summary(const raonet::graph::NetworkSummary& s) {
    using raonet::netio::format_real;
    std::cout << "nodes                  " << s.nodes << "\n"
              << "links                  " << s.links << " (loops " << s.loops << ")\n"
              << "total citations        " << raonet::netio::format_number(s.total_citations)
              << "\n"
              << "density                " << format_real(s.density, 6) << "\n"
              << "average total degree   " << format_real(s.average_total_degree, 6) << "\n"
              << "clustering coefficient " << format_real(s.clustering_coefficient, 6) << "\n";
    if (s.distances_defined)
        std::cout << "average distance       " << format_real(s.average_distance, 6) << "\n"
                  << "maximum distance       " << s.maximum_distance << "\n";
    else
        std::cout << "average distance       n/a (no connected pairs)\n"
                  << "maximum distance       n/a\n";
}

std::vector<raonet::diversity::Direction> parse_directions(const std::string& name) {
    using raonet::diversity::Direction;
    if (name == "both") return {Direction::cited, Direction::citing};
    return {raonet::diversity::direction_from_string(name)};
}

// Columns of a CSV file by header name.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw DataError("unknown field '" + name + "'");
    }

    std::vector<double> numeric_column(const std::string& name) const {
        std::size_t c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) {
            if (c >= row.size()) throw DataError("short row in CSV");
            try {
                out.push_back(std::stod(row[c]));
            } catch (const std::exception&) {
                throw DataError("non-numeric value '" + row[c] + "' in field '" + name + "'");
            }
        }
        return out;
    }
};

CsvTable load_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    auto raw = raonet::netio::read_csv(in);
    if (raw.empty()) throw DataError("empty CSV '" + path + "'");
    CsvTable t;
    t.header = raw.front();
    t.rows.assign(raw.begin() + 1, raw.end());
    return t;
}

void print_correlation(const raonet::stats::CorrelationMatrix& cm) {
    auto mark = [](int s) { return s == 2 ? "**" : (s == 1 ? "*" : ""); };
    std::cout << "n = " << cm.n << " (Pearson lower triangle, Spearman upper)\n";
    std::cout << "variable";
    for (const auto& v : cm.variables) std::cout << "\t" << v;
    std::cout << "\n";
    for (std::size_t i = 0; i < cm.variables.size(); ++i) {
        std::cout << cm.variables[i];
        for (std::size_t j = 0; j < cm.variables.size(); ++j) {
            std::cout << "\t";
            if (i == j)
                std::cout << "-";
            else if (j > i)
                std::cout << raonet::netio::format_real(cm.spearman[i][j], 3)
                          << mark(cm.spearman_sig[i][j]);
            else
                std::cout << raonet::netio::format_real(cm.pearson[i][j], 3)
                          << mark(cm.pearson_sig[i][j]);
        }
        std::cout << "\n";
    }
}

void write_correlation_csv(const std::string& path, const raonet::stats::CorrelationMatrix& cm,
                           int precision) {
    std::vector<std::string> header = {"var_a",   "var_b",       "n",           "pearson",
                                       "pearson_sig", "spearman", "spearman_sig"};
    auto cell = [](double v) {
        return std::isnan(v) ? raonet::netio::Cell{std::string("")} : raonet::netio::Cell{v};
    };
    std::vector<raonet::netio::Row> rows;
    for (std::size_t i = 0; i < cm.variables.size(); ++i)
        for (std::size_t j = i + 1; j < cm.variables.size(); ++j)
            rows.push_back({cm.variables[i], cm.variables[j],
                            static_cast<std::int64_t>(cm.n), cell(cm.pearson[i][j]),
                            static_cast<std::int64_t>(cm.pearson_sig[i][j]),
                            cell(cm.spearman[i][j]),
                            static_cast<std::int64_t>(cm.spearman_sig[i][j])});
    std::ofstream out = open_output(path);
    raonet::netio::write_report(out, header, rows, precision);
}

void write_decomposition_csv(const std::string& path,
                             const std::vector<raonet::diversity::DecompositionReport>& reports,
                             int precision) {
    std::vector<std::string> header = {"direction", "mode",  "section",    "group", "nodes",
                                       "pair_cells", "delta", "d2", "share"};
    using raonet::netio::numeric_cell;
    std::vector<raonet::netio::Row> rows;
    for (const auto& rep : reports) {
        std::string dir = to_string(rep.direction);
        std::string mode = to_string(rep.mode);
        double within_delta = 0, within_d2 = 0;
        for (const auto& g : rep.per_group) {
            within_delta += g.within_delta;
            within_d2 += g.within_d2;
            double share = rep.total_delta > 0 ? g.within_delta / rep.total_delta : 0;
            rows.push_back({dir, mode, std::string("group"), static_cast<std::int64_t>(g.group),
                            static_cast<std::int64_t>(g.node_count),
                            static_cast<std::int64_t>(g.pair_cell_count), g.within_delta,
                            g.within_d2, share});
        }
        rows.push_back({dir, mode, std::string("within_total"), std::string(""),
                        numeric_cell(0), static_cast<std::int64_t>(rep.within_cell_count),
                        within_delta, within_d2,
                        rep.total_delta > 0 ? within_delta / rep.total_delta : 0});
        if (rep.mode == raonet::diversity::DecompositionMode::grand_matrix)
            rows.push_back({dir, mode, std::string("between"), std::string(""), numeric_cell(0),
                            static_cast<std::int64_t>(rep.total_cell_count -
                                                      rep.within_cell_count),
                            rep.between_delta, std::string(""), rep.between_share});
        rows.push_back({dir, mode, std::string("total"), std::string(""), numeric_cell(0),
                        static_cast<std::int64_t>(rep.total_cell_count), rep.total_delta,
                        std::string(""), 1.0});
    }
    std::ofstream out = open_output(path);
    raonet::netio::write_report(out, header, rows, precision);
}

// Merged per-node indicator table backing `correlate` in pipelines.
void write_merged_csv(const std::string& path, const CitationNetwork& net,
                      const std::vector<raonet::centrality::CentralityRecord>& bc, bool valued,
                      const std::vector<raonet::diversity::DiversityRecord>& div, int precision) {
    std::vector<std::string> header = {"node", "label", "bc_raw", "bc_normalized"};
    if (valued) {
        header.push_back("bc_valued_raw");
        header.push_back("bc_valued_normalized");
    }
    for (std::size_t i = 2; i < kDiversityHeader.size(); ++i) header.push_back(kDiversityHeader[i]);

    using raonet::netio::numeric_cell;
    std::vector<raonet::netio::Row> rows;
    for (std::uint32_t i = 0; i < net.size(); ++i) {
        raonet::netio::Row row = {static_cast<std::int64_t>(i + 1), net.label(i), bc[i].bc_raw,
                                  bc[i].bc_normalized};
        if (valued) {
            row.push_back(bc[i].bc_valued_raw);
            row.push_back(bc[i].bc_valued_normalized);
        }
        row.push_back(div[i].delta_cited);
        row.push_back(div[i].d2_cited);
        row.push_back(div[i].delta_citing);
        row.push_back(div[i].d2_citing);
        row.push_back(numeric_cell(div[i].sum_cited));
        row.push_back(numeric_cell(div[i].sum_citing));
        rows.push_back(std::move(row));
    }
    std::ofstream out = open_output(path);
    raonet::netio::write_report(out, header, rows, precision);
}

// --- anova ------------------------------------------------------------------

void run_anova(const std::string& input, const std::string& partition_path,
               const std::string& field, double alpha, const std::string& posthoc_name,
               bool drop_small, const std::string& output, const CommonOptions& common) {
    CsvTable table = load_csv(input);
    std::vector<double> values = table.numeric_column(field);

    std::ifstream pin = open_input(partition_path);
    auto partition = raonet::netio::parse_clu(pin, values.size());

    std::map<int, std::vector<double>> by_group;
    for (std::size_t i = 0; i < values.size(); ++i)
        by_group[partition.group_of[i]].push_back(values[i]);

    std::vector<int> group_ids;
    std::vector<std::vector<double>> groups;
    for (auto& [gid, vals] : by_group) {
        if (vals.size() < 2 && drop_small) {
            std::cerr << "note: dropping group " << gid << " (" << vals.size()
                      << " observation)\n";
            continue;
        }
        group_ids.push_back(gid);
        groups.push_back(std::move(vals));
    }

    raonet::stats::PostHoc posthoc = posthoc_name == "bonferroni"
                                         ? raonet::stats::PostHoc::bonferroni
                                         : raonet::stats::PostHoc::tukey;
    if (posthoc_name != "tukey" && posthoc_name != "bonferroni")
        throw CLI::ValidationError("--posthoc must be tukey or bonferroni");

    raonet::stats::AnovaResult res = raonet::stats::anova_tukey(groups, alpha, posthoc);

    using raonet::netio::format_real;
    std::cout << "one-way ANOVA on '" << field << "': F(" << res.df_between << ","
              << res.df_within << ") = " << format_real(res.f_statistic, 6)
              << ", p = " << format_real(res.p_value, 6) << "\n";
    if (res.degenerate_within)
        std::cout << "note: zero within-group variance; every nonzero difference is significant\n";
    if (posthoc == raonet::stats::PostHoc::tukey && !res.degenerate_within)
        std::cout << "Tukey HSD q(alpha=" << alpha << ", k=" << res.group_count
                  << ", df=" << res.df_within << ") = " << format_real(res.q_critical, 6) << "\n";

    std::cout << "group  n  mean  se\n";
    for (std::size_t g = 0; g < groups.size(); ++g) {
        double se = 0;
        if (groups[g].size() >= 2) {
            double ss = 0;
            for (double v : groups[g]) {
                double d = v - res.group_means[g];
                ss += d * d;
            }
            se = std::sqrt(ss / static_cast<double>(groups[g].size() - 1)) /
                 std::sqrt(static_cast<double>(groups[g].size()));
        }
        std::cout << group_ids[g] << "  " << res.group_sizes[g] << "  "
                  << format_real(res.group_means[g], 6) << "  " << format_real(se, 6) << "\n";
    }

    std::cout << "homogeneous subsets:";
    for (const auto& subset : res.homogeneous_subsets) {
        std::cout << " {";
        for (std::size_t i = 0; i < subset.size(); ++i)
            std::cout << (i ? "," : "") << group_ids[subset[i]];
        std::cout << "}";
    }
    std::cout << "\n";

    RunContext ctx;
    ctx.manifest.command = "anova";
    ctx.manifest_path = common.manifest_path;
    raonet::manifest::add_input(ctx.manifest, input);
    raonet::manifest::add_input(ctx.manifest, partition_path);
    raonet::manifest::add_convention(ctx.manifest, "field", field);
    raonet::manifest::add_convention(ctx.manifest, "alpha", raonet::netio::format_number(alpha));
    raonet::manifest::add_convention(ctx.manifest, "posthoc", posthoc_name);
    raonet::manifest::add_convention(ctx.manifest, "se_definition", "sd(n-1)/sqrt(n)");
    raonet::manifest::add_convention(ctx.manifest, "csv_precision",
                                     std::to_string(common.precision));

    if (!output.empty()) {
        std::vector<std::string> header = {"group_a", "group_b", "mean_a",  "mean_b",
                                           "mean_diff", "se",     "q",       "p_bonferroni",
                                           "significant"};
        std::vector<raonet::netio::Row> rows;
        for (const auto& pc : res.pairs)
            rows.push_back({static_cast<std::int64_t>(group_ids[pc.group_a]),
                            static_cast<std::int64_t>(group_ids[pc.group_b]),
                            res.group_means[pc.group_a], res.group_means[pc.group_b],
                            pc.mean_difference, pc.standard_error, pc.q_statistic,
                            posthoc == raonet::stats::PostHoc::bonferroni ? raonet::netio::Cell{pc.p_value}
                                                                          : raonet::netio::Cell{std::string("")},
                            static_cast<std::int64_t>(pc.significant ? 1 : 0)});
        std::ofstream out = open_output(output);
        raonet::netio::write_report(out, header, rows, common.precision);
        ctx.manifest.outputs.push_back(output);
    }
    ctx.finish();
}

// --- pipeline ---------------------------------------------------------------

struct PipelineLevel {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> groups;
    bool is_full = false;
};

void run_pipeline(const std::string& config_path, std::string output_dir,
                  const CommonOptions& common) {
    std::ifstream cfg_in = open_input(config_path);
    nlohmann::json cfg;
    try {
        cfg_in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.contains("input")) throw DataError("config missing 'input'");

    std::string input = cfg["input"].get<std::string>();
    std::string partition_path = cfg.value("partition", std::string());
    if (output_dir.empty()) output_dir = cfg.value("output_dir", std::string("."));
    std::vector<std::string> reports =
        cfg.value("reports", std::vector<std::string>{"bc", "diversity", "correlate"});
    bool valued = cfg.value("valued", false);
    bool drop_loop_flag = cfg.value("drop_loops", false);
    std::string convention_name = cfg.value("convention", std::string("same"));
    std::string length_mode_name = cfg.value("length_mode", std::string("inverse"));
    std::string mode_name = cfg.value("mode", std::string("grand"));
    int precision = cfg.value("precision", common.precision);

    auto has_report = [&](const std::string& r) {
        return std::find(reports.begin(), reports.end(), r) != reports.end();
    };
    for (const std::string& r : reports)
        if (r != "summary" && r != "bc" && r != "diversity" && r != "correlate" &&
            r != "decompose")
            throw DataError("unknown report '" + r + "'");

    std::vector<PipelineLevel> levels;
    levels.push_back({.name = "full", .labels = {}, .groups = {}, .is_full = true});
    if (cfg.contains("levels")) {
        if (!cfg["levels"].is_array()) throw DataError("config 'levels' must be an array");
        for (const auto& item : cfg["levels"]) {
            PipelineLevel level;
            level.name = item.value("name", std::string("level") +
                                                 std::to_string(levels.size()));
            if (item.contains("labels"))
                level.labels = item["labels"].get<std::vector<std::string>>();
            else if (item.contains("groups"))
                level.groups = item["groups"].get<std::vector<int>>();
            else
                throw DataError("level '" + level.name + "' needs 'labels' or 'groups'");
            levels.push_back(std::move(level));
        }
    }

    fs::create_directories(output_dir);
    CitationNetwork full = load_network(input);
    if (drop_loop_flag) full = raonet::graph::drop_loops(full);
    std::vector<int> partition;
    if (!partition_path.empty()) partition = load_partition(partition_path, full);

    auto convention = raonet::diversity::convention_from_string(convention_name);
    auto length_mode = raonet::centrality::length_mode_from_string(length_mode_name);
    auto decomp_mode = raonet::diversity::decomposition_mode_from_string(mode_name);

    RunContext ctx;
    ctx.manifest.command = "pipeline";
    ctx.manifest_path = (fs::path(output_dir) / "pipeline_manifest.json").string();
    raonet::manifest::add_input(ctx.manifest, config_path);
    raonet::manifest::add_input(ctx.manifest, input);
    if (!partition_path.empty()) raonet::manifest::add_input(ctx.manifest, partition_path);
    raonet::manifest::add_convention(ctx.manifest, "convention", to_string(convention));
    raonet::manifest::add_convention(ctx.manifest, "length_mode", to_string(length_mode));
    raonet::manifest::add_convention(ctx.manifest, "decomposition_mode", to_string(decomp_mode));
    raonet::manifest::add_convention(ctx.manifest, "loops",
                                     drop_loop_flag ? "dropped" : "kept");
    raonet::manifest::add_convention(ctx.manifest, "bc_normalization", "100/((n-1)(n-2))");
    raonet::manifest::add_convention(ctx.manifest, "csv_precision", std::to_string(precision));

    struct LevelResult {
        std::string name;
        std::vector<std::uint32_t> nodes; // original indices
        std::vector<raonet::diversity::DiversityRecord> diversity;
    };
    std::vector<LevelResult> level_results;

    CitationNetwork current = full;
    std::vector<std::uint32_t> current_nodes(full.size());
    for (std::uint32_t i = 0; i < full.size(); ++i) current_nodes[i] = i;

    for (const PipelineLevel& level : levels) {
        if (!level.is_full) {
            std::vector<std::uint32_t> wanted;
            if (!level.labels.empty())
                wanted = resolve_labels(full, level.labels);
            else {
                if (partition.empty())
                    throw DataError("level '" + level.name + "' uses groups but no partition given");
                wanted = resolve_groups(partition, level.groups);
            }
            std::sort(wanted.begin(), wanted.end());
            std::vector<std::uint32_t> nodes;
            std::set_intersection(current_nodes.begin(), current_nodes.end(), wanted.begin(),
                                  wanted.end(), std::back_inserter(nodes));
            if (nodes.empty())
                throw DataError("level '" + level.name + "' selects no nodes inside its parent");
            current = raonet::graph::restrict_to(full, nodes);
            current_nodes = nodes;
        }

        auto out_path = [&](const std::string& stem) {
            return (fs::path(output_dir) / (stem + "_" + level.name + ".csv")).string();
        };

        LevelResult result;
        result.name = level.name;
        result.nodes = current_nodes;

        if (has_report("summary")) {
            auto s = raonet::graph::summarize(current, common.threads);
            std::string path =
                (fs::path(output_dir) / ("summary_" + level.name + ".txt")).string();
            std::ofstream out = open_output(path);
            std::streambuf* old = std::cout.rdbuf(out.rdbuf());
            print_summary(s);
            std::cout.rdbuf(old);
            ctx.manifest.outputs.push_back(path);
        }

        std::vector<raonet::centrality::CentralityRecord> bc_records;
        bool need_bc = has_report("bc") || has_report("correlate");
        if (need_bc) {
            bc_records = raonet::centrality::bc_binary(current, common.threads);
            if (valued) {
                auto valued_records =
                    raonet::centrality::bc_valued(current, length_mode, common.threads);
                for (std::size_t i = 0; i < bc_records.size(); ++i) {
                    bc_records[i].bc_valued_raw = valued_records[i].bc_valued_raw;
                    bc_records[i].bc_valued_normalized = valued_records[i].bc_valued_normalized;
                }
            }
            if (has_report("bc")) {
                write_bc_csv(out_path("bc"), current, bc_records, valued, precision);
                ctx.manifest.outputs.push_back(out_path("bc"));
            }
        }

        bool need_div = has_report("diversity") || has_report("correlate");
        if (need_div) {
            result.diversity = raonet::diversity::diversity_all(current, convention, common.threads);
            if (has_report("diversity")) {
                write_diversity_csv(out_path("rao1"), result.diversity, precision);
                ctx.manifest.outputs.push_back(out_path("rao1"));
            }
        }

        if (has_report("correlate")) {
            write_merged_csv(out_path("merged"), current, bc_records, valued, result.diversity,
                             precision);
            ctx.manifest.outputs.push_back(out_path("merged"));

            std::vector<std::string> names = {"bc_normalized"};
            std::vector<std::vector<double>> cols;
            std::vector<double> bc_norm(current.size());
            for (std::size_t i = 0; i < current.size(); ++i) bc_norm[i] = bc_records[i].bc_normalized;
            cols.push_back(bc_norm);
            if (valued) {
                names.push_back("bc_valued_normalized");
                std::vector<double> v(current.size());
                for (std::size_t i = 0; i < current.size(); ++i)
                    v[i] = bc_records[i].bc_valued_normalized;
                cols.push_back(v);
            }
            names.push_back("d2_cited");
            names.push_back("d2_citing");
            std::vector<double> d2c(current.size()), d2g(current.size());
            for (std::size_t i = 0; i < current.size(); ++i) {
                d2c[i] = result.diversity[i].d2_cited;
                d2g[i] = result.diversity[i].d2_citing;
            }
            cols.push_back(d2c);
            cols.push_back(d2g);
            auto cm = raonet::stats::correlation_matrix(names, cols);
            write_correlation_csv(out_path("corr"), cm, precision);
            ctx.manifest.outputs.push_back(out_path("corr"));
        }

        if (has_report("decompose")) {
            if (partition.empty()) throw DataError("decompose report needs a partition");
            std::vector<int> level_partition;
            for (std::uint32_t node : current_nodes) level_partition.push_back(partition[node]);
            std::vector<raonet::diversity::DecompositionReport> reps;
            for (auto dir : {raonet::diversity::Direction::cited,
                             raonet::diversity::Direction::citing})
                reps.push_back(raonet::diversity::decompose(current, level_partition, dir,
                                                            convention, decomp_mode,
                                                            common.threads));
            write_decomposition_csv(out_path("decomp"), reps, precision);
            ctx.manifest.outputs.push_back(out_path("decomp"));
        }

        level_results.push_back(std::move(result));
    }

    // Combined multi-level table over the full node set.
    if (has_report("diversity")) {
        std::vector<std::string> header = {"node", "label"};
        for (const auto& lr : level_results)
            for (const char* col :
                 {"delta_cited", "d2_cited", "delta_citing", "d2_citing", "sum_cited",
                  "sum_citing", "rank_cited", "rank_citing", "pct_cited", "pct_citing"})
                header.push_back(std::string(col) + "_" + lr.name);

        using raonet::netio::Cell;
        std::vector<raonet::netio::Row> rows(full.size());
        for (std::uint32_t i = 0; i < full.size(); ++i)
            rows[i] = {static_cast<std::int64_t>(i + 1), full.label(i)};

        for (const auto& lr : level_results) {
            std::vector<double> d2c(lr.nodes.size()), d2g(lr.nodes.size());
            for (std::size_t i = 0; i < lr.nodes.size(); ++i) {
                d2c[i] = lr.diversity[i].d2_cited;
                d2g[i] = lr.diversity[i].d2_citing;
            }
            std::vector<std::string> level_labels(lr.nodes.size());
            for (std::size_t i = 0; i < lr.nodes.size(); ++i)
                level_labels[i] = full.label(lr.nodes[i]);
            auto rank_of = [&](const std::vector<double>& vals) {
                auto table = raonet::centrality::rank_table(vals, level_labels);
                std::vector<std::size_t> rank(vals.size());
                for (const auto& row : table) rank[row.node] = row.rank;
                return rank;
            };
            std::vector<std::size_t> rank_c = rank_of(d2c), rank_g = rank_of(d2g);

            std::vector<bool> in_level(full.size(), false);
            std::vector<std::size_t> pos(full.size(), 0);
            for (std::size_t i = 0; i < lr.nodes.size(); ++i) {
                in_level[lr.nodes[i]] = true;
                pos[lr.nodes[i]] = i;
            }
            for (std::uint32_t node = 0; node < full.size(); ++node) {
                if (!in_level[node]) {
                    for (int c = 0; c < 10; ++c) rows[node].push_back(std::string(""));
                    continue;
                }
                const auto& rec = lr.diversity[pos[node]];
                rows[node].push_back(rec.delta_cited);
                rows[node].push_back(rec.d2_cited);
                rows[node].push_back(rec.delta_citing);
                rows[node].push_back(rec.d2_citing);
                rows[node].push_back(raonet::netio::numeric_cell(rec.sum_cited));
                rows[node].push_back(raonet::netio::numeric_cell(rec.sum_citing));
                rows[node].push_back(static_cast<std::int64_t>(rank_c[pos[node]]));
                rows[node].push_back(static_cast<std::int64_t>(rank_g[pos[node]]));
                rows[node].push_back(raonet::stats::percentile_rank(d2c, rec.d2_cited));
                rows[node].push_back(raonet::stats::percentile_rank(d2g, rec.d2_citing));
            }
        }
        std::string path = (fs::path(output_dir) / "combined_levels.csv").string();
        std::ofstream out = open_output(path);
        raonet::netio::write_report(out, header, rows, precision);
        ctx.manifest.outputs.push_back(path);
    }

    ctx.finish();
    std::cout << "pipeline: " << level_results.size() << " levels, " << ctx.manifest.outputs.size()
              << " outputs in " << output_dir << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interdisciplinarity indicators on journal citation networks"};
    app.set_version_flag("--version", RAONET_VERSION);
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name

    CommonOptions common;
    app.add_option("--threads", common.threads,
                   "worker count (default: RAONET_THREADS or hardware)");
    app.add_option("--precision", common.precision, "significant digits in CSV output");
    app.add_option("--manifest", common.manifest_path, "manifest path override");

    // summary
    std::string in_path, out_path, partition_path;
    auto* cmd_summary = app.add_subcommand("summary", "network summary statistics");
    cmd_summary->add_option("--input", in_path)->required();

    // components
    auto* cmd_components = app.add_subcommand("components", "weak components");
    cmd_components->add_option("--input", in_path)->required();
    cmd_components->add_option("--output", out_path);

    // restrict
    std::string labels_arg, labels_file, groups_arg;
    auto* cmd_restrict = app.add_subcommand("restrict", "induced subnetwork");
    cmd_restrict->add_option("--input", in_path)->required();
    cmd_restrict->add_option("--output", out_path)->required();
    cmd_restrict->add_option("--labels", labels_arg, "comma-separated labels");
    cmd_restrict->add_option("--labels-file", labels_file, "one label per line");
    cmd_restrict->add_option("--partition", partition_path);
    cmd_restrict->add_option("--groups", groups_arg, "comma-separated group ids");

    // bc
    bool valued = false, symmetrize_first = false;
    std::string length_mode_name = "inverse";
    std::size_t top_n = 0;
    auto* cmd_bc = app.add_subcommand("bc", "betweenness centrality");
    cmd_bc->add_option("--input", in_path)->required();
    cmd_bc->add_option("--output", out_path)->required();
    cmd_bc->add_flag("--valued", valued, "also compute valued BC");
    cmd_bc->add_option("--length-mode", length_mode_name, "inverse|unit|max-plus-one-minus")
        ->check(CLI::IsMember({"inverse", "unit", "max-plus-one-minus"}));
    cmd_bc->add_flag("--symmetrize", symmetrize_first, "symmetrize before computing");
    cmd_bc->add_option("--top", top_n, "print the top-N table");

    // diversity
    std::string direction_name = "both", convention_name = "same", cells_path;
    bool drop_loops_flag = false, legacy_names = false;
    std::size_t cell_limit = 10'000'000;
    auto* cmd_diversity = app.add_subcommand("diversity", "Rao-Stirling and true diversity");
    cmd_diversity->add_option("--input", in_path)->required();
    cmd_diversity->add_option("--output", out_path)->required();
    cmd_diversity->add_option("--direction", direction_name, "cited|citing|both")
        ->check(CLI::IsMember({"cited", "citing", "both"}));
    cmd_diversity->add_option("--convention", convention_name, "same|orthogonal")
        ->check(CLI::IsMember({"same", "orthogonal"}));
    cmd_diversity->add_flag("--drop-loops", drop_loops_flag);
    cmd_diversity->add_option("--cells", cells_path, "per-pair cell value CSV");
    cmd_diversity->add_option("--cell-limit", cell_limit, "row-count warning threshold");
    cmd_diversity->add_flag("--legacy-names", legacy_names, "write rao1.csv/rao2.csv names");

    // decompose
    std::string mode_name = "grand";
    bool largest_component = false;
    auto* cmd_decompose = app.add_subcommand("decompose", "within/between-group diversity");
    cmd_decompose->add_option("--input", in_path)->required();
    cmd_decompose->add_option("--partition", partition_path)->required();
    cmd_decompose->add_option("--output", out_path)->required();
    cmd_decompose->add_option("--direction", direction_name, "cited|citing|both")
        ->check(CLI::IsMember({"cited", "citing", "both"}));
    cmd_decompose->add_option("--convention", convention_name, "same|orthogonal")
        ->check(CLI::IsMember({"same", "orthogonal"}));
    cmd_decompose->add_option("--mode", mode_name, "local|grand")
        ->check(CLI::IsMember({"local", "grand"}));
    cmd_decompose->add_flag("--drop-loops", drop_loops_flag);
    cmd_decompose->add_flag("--largest-component", largest_component,
                            "restrict to the largest weak component first");

    // neighborhood
    std::string focal_name, nb_mode_name = "integration";
    bool include_focal = false;
    auto* cmd_neighborhood = app.add_subcommand("neighborhood", "k=1 neighborhood extraction");
    cmd_neighborhood->add_option("--input", in_path)->required();
    cmd_neighborhood->add_option("--focal", focal_name)->required();
    cmd_neighborhood->add_option("--mode", nb_mode_name, "integration|diffusion")
        ->check(CLI::IsMember({"integration", "diffusion"}));
    cmd_neighborhood->add_flag("--include-focal", include_focal);
    cmd_neighborhood->add_option("--output", out_path)->required();

    // correlate
    std::string vars_arg;
    auto* cmd_correlate = app.add_subcommand("correlate", "Pearson/Spearman matrix over a CSV");
    cmd_correlate->add_option("--input", in_path)->required();
    cmd_correlate->add_option("--vars", vars_arg, "comma-separated column names")->required();
    cmd_correlate->add_option("--output", out_path)->required();

    // anova
    std::string field_name, posthoc_name = "tukey";
    double alpha = 0.05;
    bool drop_small = false;
    auto* cmd_anova = app.add_subcommand("anova", "one-way ANOVA with post-hoc grouping");
    cmd_anova->add_option("--input", in_path)->required();
    cmd_anova->add_option("--partition", partition_path)->required();
    cmd_anova->add_option("--field", field_name)->required();
    cmd_anova->add_option("--alpha", alpha);
    cmd_anova->add_option("--posthoc", posthoc_name, "tukey|bonferroni")
        ->check(CLI::IsMember({"tukey", "bonferroni"}));
    cmd_anova->add_flag("--drop-small", drop_small, "drop groups with fewer than 2 observations");
    cmd_anova->add_option("--output", out_path, "pairwise comparison CSV");

    // cells
    std::string focal_filter_arg;
    auto* cmd_cells = app.add_subcommand("cells", "per-pair cell values (focal,i,j,p_i,p_j,d_ij,cell)");
    cmd_cells->add_option("--input", in_path)->required();
    cmd_cells->add_option("--direction", direction_name, "cited|citing")
        ->required()
        ->check(CLI::IsMember({"cited", "citing"}));
    cmd_cells->add_option("--convention", convention_name, "same|orthogonal")
        ->check(CLI::IsMember({"same", "orthogonal"}));
    cmd_cells->add_option("--output", out_path)->required();
    cmd_cells->add_option("--limit", cell_limit, "row-count warning threshold");
    cmd_cells->add_option("--focal", focal_filter_arg, "comma-separated focal labels");
    cmd_cells->add_flag("--drop-loops", drop_loops_flag);

    // export-vec
    auto* cmd_export_vec = app.add_subcommand("export-vec", "CSV column to Pajek .vec");
    std::string net_path;
    cmd_export_vec->add_option("--input", in_path)->required();
    cmd_export_vec->add_option("--field", field_name)->required();
    cmd_export_vec->add_option("--output", out_path)->required();
    cmd_export_vec->add_option("--net", net_path, "network to validate the node count against");

    // pipeline
    std::string config_path, output_dir;
    auto* cmd_pipeline = app.add_subcommand("pipeline", "multi-level workflow from a config file");
    cmd_pipeline->add_option("--config", config_path)->required();
    cmd_pipeline->add_option("--output-dir", output_dir);

    try {
        app.parse(argc, argv);

        if (*cmd_summary) {
            CitationNetwork net = load_network(in_path);
            print_summary(raonet::graph::summarize(net, common.threads));
        } else if (*cmd_components) {
            CitationNetwork net = load_network(in_path);
            auto comp = raonet::graph::weak_components(net);
            std::cout << "components: " << comp.sizes.size() << "\n";
            std::cout << "sizes:";
            for (std::size_t i = 0; i < std::min<std::size_t>(comp.sizes.size(), 25); ++i)
                std::cout << " " << comp.sizes[i];
            if (comp.sizes.size() > 25) std::cout << " ...";
            std::cout << "\n";
            if (!out_path.empty()) {
                std::vector<int> groups(net.size());
                for (std::size_t i = 0; i < net.size(); ++i)
                    groups[i] = static_cast<int>(comp.component_of[i]) + 1;
                std::ofstream out = open_output(out_path);
                raonet::netio::write_clu(groups, out);
                RunContext ctx;
                ctx.manifest.command = "components";
                ctx.manifest_path = common.manifest_path;
                raonet::manifest::add_input(ctx.manifest, in_path);
                ctx.manifest.outputs.push_back(out_path);
                ctx.finish();
            }
        } else if (*cmd_restrict) {
            CitationNetwork net = load_network(in_path);
            std::vector<std::uint32_t> nodes;
            if (!labels_arg.empty()) {
                nodes = resolve_labels(net, split_list(labels_arg));
            } else if (!labels_file.empty()) {
                std::ifstream lin = open_input(labels_file);
                std::vector<std::string> labels;
                std::string line;
                while (std::getline(lin, line)) {
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (!line.empty()) labels.push_back(line);
                }
                nodes = resolve_labels(net, labels);
            } else if (!partition_path.empty() && !groups_arg.empty()) {
                auto partition = load_partition(partition_path, net);
                std::vector<int> ids;
                for (const std::string& tok : split_list(groups_arg)) ids.push_back(std::stoi(tok));
                nodes = resolve_groups(partition, ids);
            } else {
                throw CLI::ValidationError(
                    "restrict needs --labels, --labels-file, or --partition with --groups");
            }
            CitationNetwork sub = raonet::graph::restrict_to(net, nodes);
            std::ofstream out = open_output(out_path);
            raonet::netio::write_net(raonet::graph::to_raw(sub), out);
            std::cout << "restricted to " << sub.size() << " nodes, " << sub.arc_count()
                      << " arcs\n";
            RunContext ctx;
            ctx.manifest.command = "restrict";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            if (!partition_path.empty()) raonet::manifest::add_input(ctx.manifest, partition_path);
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_bc) {
            CitationNetwork net = load_network(in_path);
            if (symmetrize_first) net = raonet::graph::symmetrize(net);
            auto mode = raonet::centrality::length_mode_from_string(length_mode_name);
            auto records = raonet::centrality::bc_binary(net, common.threads);
            if (valued) {
                auto vr = raonet::centrality::bc_valued(net, mode, common.threads);
                for (std::size_t i = 0; i < records.size(); ++i) {
                    records[i].bc_valued_raw = vr[i].bc_valued_raw;
                    records[i].bc_valued_normalized = vr[i].bc_valued_normalized;
                }
            }
            write_bc_csv(out_path, net, records, valued, common.precision);
            if (top_n > 0) {
                std::vector<double> norm(net.size());
                for (std::size_t i = 0; i < net.size(); ++i) norm[i] = records[i].bc_normalized;
                print_top_table(net, norm, "top binary % BC", top_n);
                if (valued) {
                    for (std::size_t i = 0; i < net.size(); ++i)
                        norm[i] = records[i].bc_valued_normalized;
                    print_top_table(net, norm, "top valued % BC", top_n);
                }
            }
            RunContext ctx;
            ctx.manifest.command = "bc";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_convention(ctx.manifest, "valued", valued ? "true" : "false");
            raonet::manifest::add_convention(ctx.manifest, "length_mode",
                                             raonet::centrality::to_string(mode));
            raonet::manifest::add_convention(ctx.manifest, "symmetrized",
                                             symmetrize_first ? "true" : "false");
            raonet::manifest::add_convention(ctx.manifest, "bc_normalization",
                                             "100/((n-1)(n-2))");
            raonet::manifest::add_convention(ctx.manifest, "geodesic_tolerance", "1e-9");
            raonet::manifest::add_convention(ctx.manifest, "csv_precision",
                                             std::to_string(common.precision));
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_diversity) {
            CitationNetwork net = load_network(in_path);
            if (drop_loops_flag) net = raonet::graph::drop_loops(net);
            auto convention = raonet::diversity::convention_from_string(convention_name);
            auto directions = parse_directions(direction_name);
            auto records = raonet::diversity::diversity_all(net, convention, common.threads);

            fs::path out_file(out_path);
            if (legacy_names) out_file = out_file.parent_path() / "rao1.csv";
            write_diversity_csv(out_file.string(), records, common.precision);

            RunContext ctx;
            ctx.manifest.command = "diversity";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_convention(ctx.manifest, "direction", direction_name);
            raonet::manifest::add_convention(ctx.manifest, "profile_convention",
                                             to_string(convention));
            raonet::manifest::add_convention(ctx.manifest, "loops",
                                             drop_loops_flag ? "dropped" : "kept");
            raonet::manifest::add_convention(ctx.manifest, "d2_saturation_sentinel", "1e12");
            raonet::manifest::add_convention(ctx.manifest, "csv_precision",
                                             std::to_string(common.precision));
            ctx.manifest.outputs.push_back(out_file.string());

            if (!cells_path.empty() || legacy_names) {
                fs::path cells_file =
                    cells_path.empty() ? out_file.parent_path() / "rao2.csv" : fs::path(cells_path);
                for (auto dir : directions) {
                    fs::path target = cells_file;
                    if (directions.size() > 1) {
                        target = cells_file.parent_path() /
                                 (cells_file.stem().string() + "_" + to_string(dir) +
                                  cells_file.extension().string());
                    }
                    if (legacy_names && !cells_path.empty()) target = cells_file;
                    std::ofstream cout_file = open_output(target.string());
                    raonet::diversity::CellEmitOptions opts;
                    opts.warn_row_threshold = cell_limit;
                    opts.warn_stream = &std::cerr;
                    raonet::diversity::emit_cell_values(net, dir, convention, cout_file, opts);
                    ctx.manifest.outputs.push_back(target.string());
                }
            }
            ctx.finish();
        } else if (*cmd_decompose) {
            CitationNetwork net = load_network(in_path);
            std::vector<int> partition = load_partition(partition_path, net);
            if (drop_loops_flag) net = raonet::graph::drop_loops(net);
            if (largest_component) {
                auto comp = raonet::graph::weak_components(net);
                std::vector<std::uint32_t> keep;
                for (std::uint32_t i = 0; i < net.size(); ++i)
                    if (comp.component_of[i] == 0) keep.push_back(i);
                std::vector<int> sub_partition;
                for (std::uint32_t i : keep) sub_partition.push_back(partition[i]);
                net = raonet::graph::restrict_to(net, keep);
                partition = std::move(sub_partition);
            }
            auto convention = raonet::diversity::convention_from_string(convention_name);
            auto mode = raonet::diversity::decomposition_mode_from_string(mode_name);
            std::vector<raonet::diversity::DecompositionReport> reports;
            for (auto dir : parse_directions(direction_name))
                reports.push_back(raonet::diversity::decompose(net, partition, dir, convention,
                                                               mode, common.threads));
            write_decomposition_csv(out_path, reports, common.precision);
            for (const auto& rep : reports) {
                std::cout << to_string(rep.direction) << " total delta "
                          << raonet::netio::format_real(rep.total_delta, 6);
                if (rep.mode == raonet::diversity::DecompositionMode::grand_matrix)
                    std::cout << ", between " << raonet::netio::format_real(rep.between_delta, 6)
                              << " (" << raonet::netio::format_real(100 * rep.between_share, 3)
                              << "%)";
                std::cout << ", within cells " << rep.within_cell_count << "/"
                          << rep.total_cell_count << "\n";
            }
            RunContext ctx;
            ctx.manifest.command = "decompose";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_input(ctx.manifest, partition_path);
            raonet::manifest::add_convention(ctx.manifest, "mode", mode_name);
            raonet::manifest::add_convention(ctx.manifest, "direction", direction_name);
            raonet::manifest::add_convention(ctx.manifest, "profile_convention",
                                             to_string(convention));
            raonet::manifest::add_convention(ctx.manifest, "loops",
                                             drop_loops_flag ? "dropped" : "kept");
            raonet::manifest::add_convention(ctx.manifest, "csv_precision",
                                             std::to_string(common.precision));
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_neighborhood) {
            CitationNetwork net = load_network(in_path);
            std::uint32_t focal = resolve_focal(net, focal_name);
            raonet::graph::NeighborhoodMode mode;
            if (nb_mode_name == "integration")
                mode = raonet::graph::NeighborhoodMode::integration;
            else if (nb_mode_name == "diffusion")
                mode = raonet::graph::NeighborhoodMode::diffusion;
            else
                throw CLI::ValidationError("--mode must be integration or diffusion");
            auto result = raonet::graph::neighborhood(net, focal, mode, include_focal);
            std::cout << nb_mode_name << " network of '" << net.label(focal) << "': "
                      << result.members.size() << " journals\n";
            if (result.empty()) {
                std::cout << "note: empty neighborhood, no file written\n";
            } else {
                std::ofstream out = open_output(out_path);
                raonet::netio::write_net(raonet::graph::to_raw(result.subnetwork), out);
                RunContext ctx;
                ctx.manifest.command = "neighborhood";
                ctx.manifest_path = common.manifest_path;
                raonet::manifest::add_input(ctx.manifest, in_path);
                raonet::manifest::add_convention(ctx.manifest, "mode", nb_mode_name);
                raonet::manifest::add_convention(ctx.manifest, "include_focal",
                                                 include_focal ? "true" : "false");
                ctx.manifest.outputs.push_back(out_path);
                ctx.finish();
            }
        } else if (*cmd_correlate) {
            CsvTable table = load_csv(in_path);
            std::vector<std::string> names = split_list(vars_arg);
            std::vector<std::vector<double>> cols;
            for (const std::string& name : names) cols.push_back(table.numeric_column(name));
            auto cm = raonet::stats::correlation_matrix(names, cols);
            print_correlation(cm);
            write_correlation_csv(out_path, cm, common.precision);
            RunContext ctx;
            ctx.manifest.command = "correlate";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_convention(ctx.manifest, "significance",
                                             "t-approximation, two-tailed 0.05/0.01");
            raonet::manifest::add_convention(ctx.manifest, "csv_precision",
                                             std::to_string(common.precision));
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_anova) {
            run_anova(in_path, partition_path, field_name, alpha, posthoc_name, drop_small,
                      out_path, common);
        } else if (*cmd_cells) {
            CitationNetwork net = load_network(in_path);
            if (drop_loops_flag) net = raonet::graph::drop_loops(net);
            auto direction = raonet::diversity::direction_from_string(direction_name);
            auto convention = raonet::diversity::convention_from_string(convention_name);
            std::vector<std::uint32_t> focals;
            raonet::diversity::CellEmitOptions opts;
            opts.warn_row_threshold = cell_limit;
            opts.warn_stream = &std::cerr;
            if (!focal_filter_arg.empty()) {
                focals = resolve_labels(net, split_list(focal_filter_arg));
                opts.focal_filter = &focals;
            }
            std::ofstream out = open_output(out_path);
            std::size_t rows = raonet::diversity::emit_cell_values(net, direction, convention, out,
                                                                   opts);
            std::cout << rows << " cell rows\n";
            RunContext ctx;
            ctx.manifest.command = "cells";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_convention(ctx.manifest, "direction", direction_name);
            raonet::manifest::add_convention(ctx.manifest, "profile_convention",
                                             to_string(convention));
            raonet::manifest::add_convention(ctx.manifest, "loops",
                                             drop_loops_flag ? "dropped" : "kept");
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_export_vec) {
            CsvTable table = load_csv(in_path);
            std::vector<double> values = table.numeric_column(field_name);
            std::vector<std::string> labels(values.size());
            if (!net_path.empty()) {
                CitationNetwork net = load_network(net_path);
                if (net.size() != values.size())
                    throw DataError("vector length " + std::to_string(values.size()) +
                                    " != network size " + std::to_string(net.size()));
                labels = net.labels();
            }
            std::ofstream out = open_output(out_path);
            raonet::netio::write_vector(values, labels, out);
            RunContext ctx;
            ctx.manifest.command = "export-vec";
            ctx.manifest_path = common.manifest_path;
            raonet::manifest::add_input(ctx.manifest, in_path);
            raonet::manifest::add_convention(ctx.manifest, "field", field_name);
            ctx.manifest.outputs.push_back(out_path);
            ctx.finish();
        } else if (*cmd_pipeline) {
            run_pipeline(config_path, output_dir, common);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
