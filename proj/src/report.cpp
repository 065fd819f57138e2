#include "ghostproj/report.hpp"

#include "ghostproj/io.hpp"

namespace ghostproj::report {

json to_json(const ExperimentConfig& c) {
    return {{"mode", to_string(c.mode)}, {"height", c.height},     {"width", c.width},
            {"m", c.count},              {"q", c.q},               {"eps_grid", c.eps_grid},
            {"trials", c.trials},        {"seed", c.base_seed},    {"gamma", c.gamma}};
}

json to_json(const BoundReport& r) {
    const bool gi = r.mode == FeatureMode::GhostImaging;
    json j{{"mode", to_string(r.mode)},
           {"q", r.q},
           {"m", r.count},
           {gi ? "gamma_q" : "psi_q", r.gamma},
           {gi ? "lambda_q" : "phi_q", r.lambda},
           {"fro_sq", r.fro_sq}};
    if (!gi) j["s_sq"] = r.s_sq;
    json table = json::array();
    for (const auto& [eps, delta] : r.delta_of_eps) table.push_back({{"eps", eps}, {"delta", delta}});
    j["delta"] = table;
    return j;
}

json to_json(const JlReport& r) {
    const bool gi = r.config.mode == FeatureMode::GhostImaging;
    json rows = json::array();
    for (const BandRow& b : r.rows) {
        json row{{"eps", b.eps},   {"delta", b.delta},         {"lower", b.lower},
                 {"upper", b.upper}, {"violations", b.violations}, {"rate", b.rate},
                 {"vacuous", b.vacuous}, {"holds", b.holds()}};
        if (gi) {
            row["wide_violations"] = b.wide_violations;
            row["wide_rate"] = b.wide_rate;
        }
        rows.push_back(row);
    }
    return {{"config", to_json(r.config)},
            {"statistic", gi ? "|g(X)-g(Y)|^2/(M q(1-q) |X-Y|_F^2)" : "|G(X)-G(Y)|^2/(q(1-q)(M+W-1))"},
            {"fro_sq", r.fro_sq},
            {"sum", r.sum},
            {"expected_mean", r.expected_mean},
            {"mean", r.mean},
            {"variance", r.variance},
            {"std_error", r.std_error},
            {"rows", rows},
            {"all_hold", r.all_hold()}};
}

json to_json(const KernelGapReport& r) {
    json rows = json::array();
    for (const KernelGapRow& row : r.rows) {
        rows.push_back({{"m", row.count},
                        {"beta", row.beta},
                        {"median_gap", row.median_gap},
                        {"per_seed_median", row.per_seed_median}});
    }
    return {{"config", to_json(r.config)}, {"pairs", r.pairs}, {"seeds", r.seeds}, {"rows", rows}};
}

json to_json(const ClassificationReport& r) {
    const auto& c = r.config;
    return {{"config",
             {{"height", c.height},
              {"width", c.width},
              {"train", c.train},
              {"test", c.test},
              {"m", c.count},
              {"q", c.q},
              {"k", c.k},
              {"seed", c.seed}}},
            {"gamma", r.gamma},
            {"beta", r.beta},
            {"image_accuracy", r.image_accuracy},
            {"ghost_accuracy", r.ghost_accuracy},
            {"accuracy_gap", std::abs(r.image_accuracy - r.ghost_accuracy)}};
}

json to_json(const oracle::MomentTable& t) {
    return {{"q", t.q},
            {"mean_sq", t.mean_sq},
            {"var_sq", t.var_sq},
            {"mean_cross", t.mean_cross},
            {"var_cross", t.var_cross}};
}

json to_json(const oracle::GiStatistics& s) {
    return {{"realizations", s.realizations}, {"total_weight", s.total_weight},
            {"mean_raw", s.mean_raw},         {"mean_scaled_norm", s.mean_scaled_norm},
            {"mean_recon", s.mean_recon},     {"fro_sq", s.fro_sq},
            {"sum", s.sum}};
}

json to_json(const oracle::GcStatistics& s) {
    return {{"realizations", s.realizations},
            {"total_weight", s.total_weight},
            {"mean_raw", s.mean_raw},
            {"mean_scaled_norm", s.mean_scaled_norm},
            {"fro_sq", s.fro_sq},
            {"sum_correction", s.sum_correction}};
}

std::string band_csv(const JlReport& r) {
    const bool gi = r.config.mode == FeatureMode::GhostImaging;
    std::string out = gi ? "eps,delta,violations,rate,wide_rate\n" : "eps,delta,violations,rate\n";
    for (const BandRow& b : r.rows) {
        out += io::format_double(b.eps) + ',' + io::format_double(b.delta) + ',' + std::to_string(b.violations) +
               ',' + io::format_double(b.rate);
        if (gi) out += ',' + io::format_double(b.wide_rate);
        out += '\n';
    }
    return out;
}

std::string kernel_gap_csv(const KernelGapReport& r) {
    std::string out = "m,beta,median_gap\n";
    for (const KernelGapRow& row : r.rows) {
        out += std::to_string(row.count) + ',' + io::format_double(row.beta) + ',' +
               io::format_double(row.median_gap) + '\n';
    }
    return out;
}

}  // namespace ghostproj::report
