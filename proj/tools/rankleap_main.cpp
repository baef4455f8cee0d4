// rankleap: rank certification and rank-n approximation of small complex
// third-order tensors. Every randomized step takes an explicit seed and all
// outputs are deterministic given (inputs, seed, tolerances).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rankleap/io.hpp"
#include "rankleap/samples.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240915;

// distinct exit codes per failure class, documented in the README
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitPerturbation = 4;
constexpr int kExitInconclusive = 5;
constexpr int kExitSingular = 6;
constexpr int kExitConvergence = 7;
constexpr int kExitInternal = 10;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        rankleap::save_text(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace rankleap;

    CLI::App app{"rank certification and low-rank approximation for complex l x m x n tensors"};
    app.require_subcommand(1);

    // rank
    std::string rank_input;
    std::uint64_t rank_seed = kDefaultSeed;
    Tolerances rank_tol;
    auto* rank_cmd = app.add_subcommand("rank", "certify the tensor rank of a square-type tensor");
    rank_cmd->add_option("tensor", rank_input, "tensor file")->required();
    rank_cmd->add_option("--gap-tol", rank_tol.gap_tol_rel,
                         "eigenvalue-gap threshold, relative to ||A||_1");
    rank_cmd->add_option("--rank-tol", rank_tol.rank_tol_rel,
                         "singular-value cutoff, relative to ||A||_1");
    rank_cmd->add_option("--seed", rank_seed, "seed for mixing and generic combinations");

    // approx
    std::string approx_input, approx_out;
    double approx_eps = 0;
    std::uint64_t approx_seed = kDefaultSeed;
    int approx_attempts = Tolerances{}.max_attempts;
    auto* approx_cmd =
        app.add_subcommand("approx", "rank-n approximation of an n x n x 2 tensor");
    approx_cmd->add_option("tensor", approx_input, "tensor file")->required();
    approx_cmd->add_option("--eps", approx_eps, "l1 deviation budget")->required();
    approx_cmd->add_option("--seed", approx_seed, "perturbation seed");
    approx_cmd->add_option("--max-attempts", approx_attempts, "perturbation attempt budget");
    approx_cmd->add_option("--out", approx_out, "write the approximating tensor to this file");

    // leap
    std::size_t leap_n = 1;
    std::vector<std::uint64_t> leap_ks;
    std::uint64_t leap_seed = kDefaultSeed;
    auto* leap_cmd = app.add_subcommand(
        "leap", "rank-leap family in C^{2n x 2n x 2}: members of rank 2n converging to rank 3n");
    leap_cmd->add_option("--n", leap_n, "number of Jordan blocks")->required();
    leap_cmd->add_option("--k", leap_ks, "member indices k1,k2,...")
        ->required()
        ->delimiter(',');
    leap_cmd->add_option("--seed", leap_seed, "eigenvalue seed");

    // act
    std::string act_input, act_l, act_m, act_n, act_out;
    auto* act_cmd = app.add_subcommand("act", "apply (L, M, N) to a tensor");
    act_cmd->add_option("tensor", act_input, "tensor file")->required();
    act_cmd->add_option("--l", act_l, "matrix file, mode-1 factor")->required();
    act_cmd->add_option("--m", act_m, "matrix file, mode-2 factor")->required();
    act_cmd->add_option("--n", act_n, "matrix file, mode-3 factor")->required();
    act_cmd->add_option("--out", act_out, "output tensor file");

    // oracle
    std::string oracle_input;
    std::size_t oracle_r = 1;
    ALSOptions oracle_opts;
    std::uint64_t oracle_seed = kDefaultSeed;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "alternating-least-squares CP fitting evidence");
    oracle_cmd->add_option("tensor", oracle_input, "tensor file")->required();
    oracle_cmd->add_option("--r", oracle_r, "target rank")->required();
    oracle_cmd->add_option("--restarts", oracle_opts.restarts, "seeded restarts");
    oracle_cmd->add_option("--max-iters", oracle_opts.max_iters, "sweeps per restart");
    oracle_cmd->add_option("--seed", oracle_seed, "restart seed");

    // gen
    std::string gen_name, gen_out;
    std::vector<std::size_t> gen_dims{2, 2, 2};
    std::uint64_t gen_seed = kDefaultSeed;
    auto* gen_cmd = app.add_subcommand("gen", "emit sample tensors (example, w, random)");
    gen_cmd->add_option("name", gen_name, "one of: example, w, random")->required();
    gen_cmd->add_option("--dims", gen_dims, "dimensions l,m,n for random")->delimiter(',');
    gen_cmd->add_option("--seed", gen_seed, "seed for random");
    gen_cmd->add_option("--out", gen_out, "output tensor file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rank_cmd->parsed()) {
            const Tensor3 t = load_tensor(rank_input);
            const RankCertificate cert = bi_rank_check(t, rank_tol, rank_seed);
            std::cout << certificate_document(cert);
            return cert.verdict == RankVerdict::inconclusive ? kExitInconclusive : 0;
        }
        if (approx_cmd->parsed()) {
            const Tensor3 t = load_tensor(approx_input);
            Tolerances tol;
            tol.max_attempts = approx_attempts;
            const RankNApproxResult res = rank_n_approximate(t, approx_eps, approx_seed, tol);
            std::cout << approx_document(res, approx_out.empty());
            if (!approx_out.empty()) save_text(approx_out, serialize_tensor(res.approximation));
            return 0;
        }
        if (leap_cmd->parsed()) {
            const LeapFamily fam = build_leap_family(leap_n, leap_seed);
            std::vector<double> deviations;
            std::vector<RankCertificate> member_certs;
            for (std::uint64_t k : leap_ks) {
                const Tensor3 member = fam.member(k);
                deviations.push_back(norm_l1(sub(member, fam.limit)));
                member_certs.push_back(bi_rank_check(member, Tolerances{}, leap_seed));
            }
            const RankCertificate limit_cert = bi_rank_check(fam.limit, Tolerances{}, leap_seed);
            std::cout << leap_document(fam, leap_ks, deviations, member_certs, limit_cert);
            return 0;
        }
        if (act_cmd->parsed()) {
            const Tensor3 t = load_tensor(act_input);
            const GLTriple g{load_matrix(act_l), load_matrix(act_m), load_matrix(act_n)};
            emit(serialize_tensor(act(g, t)), act_out);
            return 0;
        }
        if (oracle_cmd->parsed()) {
            const Tensor3 t = load_tensor(oracle_input);
            std::cout << als_document(als_fit(t, oracle_r, oracle_opts, oracle_seed));
            return 0;
        }
        if (gen_cmd->parsed()) {
            Tensor3 t;
            if (gen_name == "example")
                t = sample_example();
            else if (gen_name == "w")
                t = sample_w();
            else if (gen_name == "random") {
                if (gen_dims.size() != 3) throw ParseError("gen random: --dims needs l,m,n");
                t = sample_random(gen_dims[0], gen_dims[1], gen_dims[2], gen_seed);
            } else
                throw ParseError("gen: unknown sample '" + gen_name + "'");
            emit(serialize_tensor(t), gen_out);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const PerturbationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPerturbation;
    } catch (const InconclusiveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const SliceMixingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
