#pragma once

#include <atomic>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "edsff/eds.hpp"

namespace edsff {

// One denominator B_n examined with the classic scan-loop semantics: a row is
// flagged when deg B_n = 0, or when B_n is not squarefree and n is not
// divisible by any pruning modulus. squarefree / l_max are left unset when
// the test was skipped (deg 0, or pruned away).
struct ScanRow {
    long n = 0;
    long degB = 0;
    std::optional<bool> squarefree;
    std::optional<long> l_max;
    bool flagged = false;
};

struct ScanConfig {
    long lo = 1;
    long hi = 1;
    PlaceSet S;                          // finite members are divided out of B_n first
    std::vector<long> moduli = {3, 4, 5};
    bool prune = false;                  // skip the squarefree test when a modulus divides n
    int threads = 1;                     // > 1 switches to the per-n ladder
};

namespace detail {

inline Poly strip_places(Poly B, const PlaceSet& S) {
    for (const Poly& pi : S.finite) {
        if (B.degree() < pi.degree()) continue;
        for (;;) {
            auto [q, r] = divmod(B, pi);
            if (!r.is_zero()) break;
            B = q;
            if (B.is_constant()) return B;
        }
    }
    return B;
}

inline bool has_simple_factor(const Poly& B) {
    if (B.degree() < 1) return false;
    for (const auto& part : squarefree_decomp(B).parts) {
        if (part.mult == 1) return true;
    }
    return false;
}

inline ScanRow make_row(const EdsTerm& term, const ScanConfig& cfg,
                        const std::vector<long>& prunable) {
    require(!term.infinite, "scan reached nP = O; the base point has finite order");
    ScanRow row;
    row.n = term.n;
    Poly B = strip_places(term.B, cfg.S);
    row.degB = B.degree();
    if (row.degB == 0) {
        row.flagged = true;
        return row;
    }
    bool divisible = false;
    for (long m : cfg.moduli) {
        if (term.n % m == 0) divisible = true;
    }
    if (cfg.prune && divisible) {
        bool covered = false;
        for (long m : prunable) {
            if (term.n % m == 0) covered = true;
        }
        if (covered) return row;  // flag is false either way; test skipped
    }
    SqfDecomp dec = squarefree_decomp(B);
    long g = 0;
    bool sf = true;
    for (const auto& part : dec.parts) {
        g = std::gcd(g, part.mult);
        if (part.mult != 1) sf = false;
    }
    row.squarefree = sf;
    row.l_max = g;
    row.flagged = !sf && !divisible;
    return row;
}

}  // namespace detail

// Scan the divisibility sequence of (E, P) over cfg's range. Output is
// ordered by n and byte-identical across thread counts: the single-thread
// path walks the sequence iteratively, the parallel path recomputes each n
// with the ladder, and both produce the same exact terms.
inline std::vector<ScanRow> scan(const Curve& E, const Point& P, const ScanConfig& cfg) {
    require(cfg.lo >= 1 && cfg.lo <= cfg.hi, "scan range must be a nonempty 1-based range");
    for (long m : cfg.moduli) require(m >= 2, "pruning moduli must be >= 2");
    detail::check_eds_inputs(E, P);

    // Pruning is sound only for moduli whose own B_m visibly contains a
    // simple factor; verify that first and prune only through those.
    std::vector<long> prunable;
    if (cfg.prune) {
        for (long m : cfg.moduli) {
            EdsTerm tm = eds_term(E, P, m);
            if (!tm.infinite && detail::has_simple_factor(tm.B)) prunable.push_back(m);
        }
    }

    std::vector<ScanRow> rows((size_t)(cfg.hi - cfg.lo + 1));
    if (cfg.threads <= 1) {
        eds_foreach(E, P, cfg.lo, cfg.hi, EdsStrategy::Iterative, [&](const EdsTerm& t) {
            rows[(size_t)(t.n - cfg.lo)] = detail::make_row(t, cfg, prunable);
        });
        return rows;
    }
    std::atomic<long> next(cfg.lo);
    auto worker = [&]() {
        for (;;) {
            long n = next.fetch_add(1);
            if (n > cfg.hi) return;
            EdsTerm t = detail::extract_term(E.scalar_mul(n, P), n);
            rows[(size_t)(n - cfg.lo)] = detail::make_row(t, cfg, prunable);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < cfg.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

// Tab-separated rows in field order, header prefixed with '#'; unknown
// squarefree / l_max cells print as '-'.
inline std::string scan_tsv(const std::vector<ScanRow>& rows) {
    std::string out = "#n\tdegB\tsquarefree\tl_max\tflagged\n";
    for (const ScanRow& r : rows) {
        out += std::to_string(r.n);
        out += '\t';
        out += std::to_string(r.degB);
        out += '\t';
        out += r.squarefree ? (*r.squarefree ? "1" : "0") : "-";
        out += '\t';
        out += r.l_max ? std::to_string(*r.l_max) : "-";
        out += '\t';
        out += r.flagged ? "1" : "0";
        out += '\n';
    }
    return out;
}

// One JSON object per row per line; unknown cells are null.
inline std::string scan_json(const std::vector<ScanRow>& rows) {
    std::string out;
    for (const ScanRow& r : rows) {
        out += "{\"n\":" + std::to_string(r.n) + ",\"degB\":" + std::to_string(r.degB) +
               ",\"squarefree\":" +
               (r.squarefree ? (*r.squarefree ? "true" : "false") : std::string("null")) +
               ",\"l_max\":" + (r.l_max ? std::to_string(*r.l_max) : std::string("null")) +
               ",\"flagged\":" + (r.flagged ? "true" : "false") + "}\n";
    }
    return out;
}

}  // namespace edsff
