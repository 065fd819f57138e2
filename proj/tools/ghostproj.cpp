// ghostproj: command-line front end.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 bound violation.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ghostproj/bounds.hpp"
#include "ghostproj/experiments.hpp"
#include "ghostproj/features.hpp"
#include "ghostproj/io.hpp"
#include "ghostproj/masks.hpp"
#include "ghostproj/oracle.hpp"
#include "ghostproj/reconstruct.hpp"
#include "ghostproj/report.hpp"
#include "ghostproj/rng.hpp"

namespace {

using namespace ghostproj;
using report::json;

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

// Stream index reserved for objects generated by the CLI itself.
constexpr std::uint64_t kObjectStream = 0xC0FFEE;

void emit(const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!path.empty()) io::write_atomic(path, text);
}

struct MaskGen {
    std::string mode = "gi";
    std::size_t height = 16, width = 16, count = 100, mask_width = 0;
    double q = 0.1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_mask_gen(const MaskGen& a) {
    const FeatureMode mode = parse_mode(a.mode);
    json summary;
    if (mode == FeatureMode::GhostImaging) {
        const MaskSet masks = generate_gi_masks(a.height, a.width, a.count, a.q, a.seed);
        io::write_atomic(a.out, io::encode_masks(masks));
        summary = {{"mode", "gi"},          {"m", masks.count()}, {"height", masks.height()},
                   {"width", masks.width()}, {"q", masks.q()},     {"seed", masks.seed()},
                   {"ones", masks.total_ones()}, {"density", masks.density()}};
    } else {
        if (a.mask_width == 0) throw ValidationError("--mask-width is required in gc mode");
        const CytometryMask mask = generate_gc_mask(a.height, a.mask_width, a.q, a.seed);
        io::write_atomic(a.out, io::encode_masks(mask));
        summary = {{"mode", "gc"},       {"m", mask.columns()}, {"height", mask.height()},
                   {"q", mask.q()},       {"seed", mask.seed()}, {"ones", mask.total_ones()},
                   {"density", mask.density()}};
    }
    emit(summary, "");
    return 0;
}

struct FeaturesExtract {
    std::string image, mask, out;
    bool centered = false;
};

int run_features_extract(const FeaturesExtract& a) {
    const ImageObject x = io::read_matrix(a.image);
    const io::AnyMask mask = io::read_masks(a.mask);
    const FeatureVector fv = std::holds_alternative<MaskSet>(mask)
                                 ? gi_features(x, std::get<MaskSet>(mask))
                                 : gc_features(x, std::get<CytometryMask>(mask));
    const auto& values = a.centered ? fv.centered : fv.raw;
    io::write_features(a.out, fv.mode, values);
    emit({{"mode", to_string(fv.mode)}, {"length", values.size()}, {"mean", fv.mean}, {"centered", a.centered}}, "");
    return 0;
}

struct VerifyJl {
    std::string mode = "gi";
    std::size_t height = 8, width = 8, m = 512, trials = 1000;
    double q = 0.1;
    std::vector<double> eps{0.1, 0.2, 0.3};
    std::uint64_t seed = 1;
    std::string x, y, report, csv;
};

std::pair<ImageObject, ImageObject> load_or_generate_pair(const std::string& xp, const std::string& yp,
                                                          std::size_t h, std::size_t w, std::uint64_t seed) {
    if (xp.empty() != yp.empty()) throw ValidationError("--x and --y must be given together");
    if (!xp.empty()) return {io::read_matrix(xp), io::read_matrix(yp)};
    auto imgs = random_images(2, h, w, rng::mix(seed, kObjectStream));
    return {imgs[0], imgs[1]};
}

int run_verify_jl(const VerifyJl& a) {
    ExperimentConfig c;
    c.mode = parse_mode(a.mode);
    c.height = a.height;
    c.width = a.width;
    c.count = a.m;
    c.q = a.q;
    c.eps_grid = a.eps;
    c.trials = a.trials;
    c.base_seed = a.seed;
    auto [x, y] = load_or_generate_pair(a.x, a.y, a.height, a.width, a.seed);
    c.height = x.height();
    c.width = x.width();
    const JlReport r = verify_jl(x, y, c);
    emit(report::to_json(r), a.report);
    if (!a.csv.empty()) io::write_atomic(a.csv, report::band_csv(r));
    return r.all_hold() ? 0 : kExitViolation;
}

struct Reconstruct {
    std::string image, mask, out, report;
    std::size_t m = 0;
    double q = 0.5;
    std::uint64_t seed = 1;
    bool raw = false;
};

int run_reconstruct(const Reconstruct& a) {
    const ImageObject truth = io::read_matrix(a.image);
    std::optional<MaskSet> masks;
    if (!a.mask.empty()) {
        io::AnyMask any = io::read_masks(a.mask);
        if (!std::holds_alternative<MaskSet>(any)) throw ValidationError("reconstruction needs a gi mask file");
        masks = std::move(std::get<MaskSet>(any));
    } else {
        const std::size_t m = a.m ? a.m : 20 * truth.size();
        masks = generate_gi_masks(truth.height(), truth.width(), m, a.q, a.seed);
    }
    ImageObject recon = reconstruct_image(gi_features(truth, *masks), *masks);
    if (!a.raw) recon = rescale_reconstruction(recon, masks->q(), masks->count());
    if (!a.out.empty()) io::write_matrix(a.out, recon);
    emit({{"m", masks->count()},
          {"q", masks->q()},
          {"seed", masks->seed()},
          {"rescaled", !a.raw},
          {"correlation", pearson_correlation(recon.values(), truth.values())}},
         a.report);
    return 0;
}

struct BoundsEval {
    std::string mode = "gi", diff, x, y, report;
    double q = 0.1;
    std::size_t m = 512;
    std::vector<double> eps{0.1, 0.2, 0.3};
};

int run_bounds_eval(const BoundsEval& a) {
    std::optional<ImageObject> d;
    if (!a.diff.empty()) {
        d = io::read_matrix(a.diff);
    } else if (!a.x.empty() && !a.y.empty()) {
        d = io::read_matrix(a.x) - io::read_matrix(a.y);
    } else {
        throw ValidationError("give --diff or both --x and --y");
    }
    emit(report::to_json(evaluate_bounds(*d, parse_mode(a.mode), a.q, a.m, a.eps)), a.report);
    return 0;
}

struct KernelGap {
    std::string mode = "gi", report, csv;
    std::size_t height = 8, width = 8, pairs = 50, seeds = 20;
    std::vector<std::size_t> m{64, 256, 1024};
    double q = 0.1, gamma = 0.0;
    std::uint64_t seed = 1;
};

int run_kernel_gap(const KernelGap& a) {
    ExperimentConfig c;
    c.mode = parse_mode(a.mode);
    c.height = a.height;
    c.width = a.width;
    c.q = a.q;
    c.base_seed = a.seed;
    c.gamma = a.gamma > 0.0 ? a.gamma : 1.0 / static_cast<double>(a.height * a.width);
    if (a.pairs == 0) throw ValidationError("--pairs must be >= 1");
    const auto objects = random_images(2 * a.pairs, a.height, a.width, rng::mix(a.seed, kObjectStream));
    std::vector<std::pair<ImageObject, ImageObject>> pairs;
    for (std::size_t p = 0; p < a.pairs; ++p) pairs.emplace_back(objects[2 * p], objects[2 * p + 1]);
    const KernelGapReport r = kernel_gap_experiment(pairs, c, a.m, a.seeds);
    emit(report::to_json(r), a.report);
    if (!a.csv.empty()) io::write_atomic(a.csv, report::kernel_gap_csv(r));
    return 0;
}

int run_classify_demo(const ClassificationConfig& c, const std::string& path) {
    emit(report::to_json(classification_demo(c)), path);
    return 0;
}

struct OracleStats {
    std::string mode = "gi", image, report;
    std::size_t m = 2;
    double q = 0.5;
};

int run_oracle(const OracleStats& a) {
    const ImageObject x = io::read_matrix(a.image);
    json j = parse_mode(a.mode) == FeatureMode::GhostImaging ? report::to_json(oracle::exact_gi_statistics(x, a.m, a.q))
                                                             : report::to_json(oracle::exact_gc_statistics(x, a.m, a.q));
    j["moments"] = report::to_json(oracle::bernoulli_product_moments(a.q));
    emit(j, a.report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ghost imaging and ghost cytometry as random projections"};
    app.require_subcommand(1);
    int code = 0;

    auto* mask = app.add_subcommand("mask", "Illumination patterns");
    mask->require_subcommand(1);
    MaskGen mg;
    auto* mask_gen = mask->add_subcommand("gen", "Generate a GFB1 mask file");
    mask_gen->add_option("--mode", mg.mode, "gi or gc")->check(CLI::IsMember({"gi", "gc"}));
    mask_gen->add_option("--height", mg.height, "Rows H");
    mask_gen->add_option("--width", mg.width, "Columns W (gi)");
    mask_gen->add_option("--count", mg.count, "Number of patterns M (gi)");
    mask_gen->add_option("--mask-width", mg.mask_width, "Strip width M (gc)");
    mask_gen->add_option("--q", mg.q, "Probability of a one");
    mask_gen->add_option("--seed", mg.seed, "Seed");
    mask_gen->add_option("--out", mg.out, "Output GFB1 path")->required();
    mask_gen->callback([&] { code = run_mask_gen(mg); });

    auto* features = app.add_subcommand("features", "Ghost features");
    features->require_subcommand(1);
    FeaturesExtract fe;
    auto* extract = features->add_subcommand("extract", "Compute features of an image under a mask file");
    extract->add_option("--image", fe.image, "GFM1 or CSV image")->required();
    extract->add_option("--mask", fe.mask, "GFB1 mask file")->required();
    extract->add_option("--out", fe.out, "Output (.csv → CSV, otherwise GFV1)")->required();
    extract->add_flag("--centered", fe.centered, "Emit g = G − <G> instead of G");
    extract->callback([&] { code = run_features_extract(fe); });

    auto* verify = app.add_subcommand("verify", "Monte Carlo bound verification");
    verify->require_subcommand(1);
    VerifyJl vj;
    auto* jl = verify->add_subcommand("jl", "Distance-preservation band vs its failure probability");
    jl->add_option("--mode", vj.mode, "gi or gc")->check(CLI::IsMember({"gi", "gc"}));
    jl->add_option("--height", vj.height, "Rows H");
    jl->add_option("--width", vj.width, "Columns W");
    jl->add_option("--m", vj.m, "Patterns (gi) or strip width (gc)");
    jl->add_option("--q", vj.q, "Probability of a one");
    jl->add_option("--eps", vj.eps, "Band half-widths")->expected(1, -1);
    jl->add_option("--trials", vj.trials, "Monte Carlo trials");
    jl->add_option("--seed", vj.seed, "Base seed");
    jl->add_option("--x", vj.x, "Object X (default: random, seeded)");
    jl->add_option("--y", vj.y, "Object Y (default: random, seeded)");
    jl->add_option("--report", vj.report, "Write the JSON report here");
    jl->add_option("--csv", vj.csv, "Write eps/delta/rate CSV here");
    jl->callback([&] { code = run_verify_jl(vj); });

    Reconstruct rc;
    auto* recon = app.add_subcommand("reconstruct", "Correlation reconstruction from ghost-imaging features");
    recon->add_option("--image", rc.image, "Ground-truth image")->required();
    recon->add_option("--mask", rc.mask, "GFB1 gi mask file (otherwise generated)");
    recon->add_option("--m", rc.m, "Pattern count when generating (default 20*H*W)");
    recon->add_option("--q", rc.q, "Probability of a one when generating");
    recon->add_option("--seed", rc.seed, "Seed when generating");
    recon->add_option("--out", rc.out, "Reconstructed image (.csv → CSV, otherwise GFM1)");
    recon->add_flag("--raw", rc.raw, "Skip the (1−1/M)q(1−q) rescaling");
    recon->add_option("--report", rc.report, "Write the JSON report here");
    recon->callback([&] { code = run_reconstruct(rc); });

    auto* bounds = app.add_subcommand("bounds", "Closed-form bound quantities");
    bounds->require_subcommand(1);
    BoundsEval be;
    auto* eval = bounds->add_subcommand("eval", "Evaluate Γ,Λ (gi) or Ψ,Φ (gc) and δ(ε)");
    eval->add_option("--mode", be.mode, "gi or gc")->check(CLI::IsMember({"gi", "gc"}));
    eval->add_option("--diff", be.diff, "Difference image X − Y");
    eval->add_option("--x", be.x, "Object X");
    eval->add_option("--y", be.y, "Object Y");
    eval->add_option("--q", be.q, "Probability of a one");
    eval->add_option("--m", be.m, "Patterns (gi) or strip width (gc)");
    eval->add_option("--eps", be.eps, "Epsilon grid")->expected(1, -1);
    eval->add_option("--report", be.report, "Write the JSON report here");
    eval->callback([&] { code = run_bounds_eval(be); });

    auto* kernel = app.add_subcommand("kernel", "Kernel approximation");
    kernel->require_subcommand(1);
    KernelGap kg;
    auto* gap = kernel->add_subcommand("gap", "Median |κ_γ(X,Y) − κ_β(f(X),f(Y))| per M");
    gap->add_option("--mode", kg.mode, "gi or gc")->check(CLI::IsMember({"gi", "gc"}));
    gap->add_option("--height", kg.height, "Rows H");
    gap->add_option("--width", kg.width, "Columns W");
    gap->add_option("--q", kg.q, "Probability of a one");
    gap->add_option("--m", kg.m, "Pattern counts")->expected(1, -1);
    gap->add_option("--pairs", kg.pairs, "Random object pairs");
    gap->add_option("--seeds", kg.seeds, "Mask draws per M");
    gap->add_option("--gamma", kg.gamma, "Image RBF scale (default 1/(H*W))");
    gap->add_option("--seed", kg.seed, "Base seed");
    gap->add_option("--report", kg.report, "Write the JSON report here");
    gap->add_option("--csv", kg.csv, "Write M/median-gap CSV here");
    gap->callback([&] { code = run_kernel_gap(kg); });

    auto* classify = app.add_subcommand("classify", "Classification on synthetic cells");
    classify->require_subcommand(1);
    ClassificationConfig cc;
    std::string classify_report;
    auto* demo = classify->add_subcommand("demo", "Disk vs ring, image kernel vs ghost-feature kernel");
    demo->add_option("--height", cc.height, "Rows H");
    demo->add_option("--width", cc.width, "Columns W");
    demo->add_option("--train", cc.train, "Training cells");
    demo->add_option("--test", cc.test, "Test cells");
    demo->add_option("--m", cc.count, "Patterns");
    demo->add_option("--q", cc.q, "Probability of a one");
    demo->add_option("--k", cc.k, "Neighbours (odd)");
    demo->add_option("--seed", cc.seed, "Seed");
    demo->add_option("--report", classify_report, "Write the JSON report here");
    demo->callback([&] { code = run_classify_demo(cc, classify_report); });

    auto* orc = app.add_subcommand("oracle", "Exact enumeration on tiny instances");
    orc->require_subcommand(1);
    OracleStats os;
    auto* stats = orc->add_subcommand("stats", "Exact feature statistics over all mask realizations");
    stats->add_option("--mode", os.mode, "gi or gc")->check(CLI::IsMember({"gi", "gc"}));
    stats->add_option("--image", os.image, "Image")->required();
    stats->add_option("--m", os.m, "Patterns (gi) or strip width (gc)");
    stats->add_option("--q", os.q, "Probability of a one");
    stats->add_option("--report", os.report, "Write the JSON report here");
    stats->callback([&] { code = run_oracle(os); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return code;
}
