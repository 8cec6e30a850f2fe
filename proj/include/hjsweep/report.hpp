#ifndef HJSWEEP_REPORT_HPP
#define HJSWEEP_REPORT_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hjsweep/solver.hpp"

namespace hjsweep {

/// Per-mesh outcome of a convergence study.
struct MeshResult {
    int n = 0;
    bool has_error = false;
    double l1 = 0.0, linf = 0.0;
    double order_l1 = std::numeric_limits<double>::quiet_NaN();
    double order_linf = std::numeric_limits<double>::quiet_NaN();
    long iterations = 0;
    double seconds = 0.0;
    SolveStatus status = SolveStatus::NotConverged;
};

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::NotConverged: return "not-converged";
        default: return "diverged";
    }
}

namespace detail {

inline std::string sci3(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

inline std::string full(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string fixed2(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

/// Table rows in the layout of the benchmark tables: three-significant-digit
/// columns for reading, full-precision columns for diffing.
inline void write_convergence_csv(const std::string& path, const std::vector<MeshResult>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "n,l1,order_l1,linf,order_linf,iter,seconds,l1_full,linf_full,status\n";
    for (const auto& r : rows) {
        out << r.n << ',' << (r.has_error ? detail::sci3(r.l1) : "") << ','
            << detail::fixed2(r.order_l1) << ',' << (r.has_error ? detail::sci3(r.linf) : "") << ','
            << detail::fixed2(r.order_linf) << ',' << r.iterations << ','
            << detail::fixed2(r.seconds) << ',' << (r.has_error ? detail::full(r.l1) : "") << ','
            << (r.has_error ? detail::full(r.linf) : "") << ',' << status_name(r.status) << '\n';
    }
}

/// Checkpoint history as JSON lines (plot-ready).
inline void write_history_jsonl(const std::string& path, const IterationStats& stats) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& cp : stats.history) {
        out << "{\"iter\":" << cp.iter << ",\"delta\":" << detail::full(cp.delta)
            << ",\"residual\":" << detail::full(cp.residual);
        if (std::isfinite(cp.l1_error)) out << ",\"l1\":" << detail::full(cp.l1_error);
        out << "}\n";
    }
}

// ---------------------------------------------------------------------------
// Content hashing (git blob convention) for run manifests.
// ---------------------------------------------------------------------------

namespace detail {

class Sha1 {
  public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        total_ += len;
        while (len > 0) {
            const std::size_t take = std::min(len, std::size_t(64) - fill_);
            std::copy(p, p + take, block_ + fill_);
            fill_ += take;
            p += take;
            len -= take;
            if (fill_ == 64) {
                process();
                fill_ = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = total_ * 8;
        const std::uint8_t pad = 0x80;
        update(&pad, 1);
        const std::uint8_t zero = 0;
        while (fill_ != 56) update(&zero, 1);
        std::uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
        update(lenb, 8);
        char out[41];
        for (int i = 0; i < 5; ++i) std::snprintf(out + 8 * i, 9, "%08x", h_[i]);
        return std::string(out, 40);
    }

  private:
    static std::uint32_t rol(std::uint32_t v, int s) { return (v << s) | (v >> (32 - s)); }

    void process() {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block_[4 * i]) << 24) | (std::uint32_t(block_[4 * i + 1]) << 16) |
                   (std::uint32_t(block_[4 * i + 2]) << 8) | block_[4 * i + 3];
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) { f = (b & c) | (~b & d); k = 0x5a827999; }
            else if (i < 40) { f = b ^ c ^ d; k = 0x6ed9eba1; }
            else if (i < 60) { f = (b & c) | (b & d) | (c & d); k = 0x8f1bbcdc; }
            else { f = b ^ c ^ d; k = 0xca62c1d6; }
            const std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = t;
        }
        h_[0] += a;
        h_[1] += b;
        h_[2] += c;
        h_[3] += d;
        h_[4] += e;
    }

    std::uint32_t h_[5] = {0x67452301, 0xefcdab89, 0x98badcfe, 0x10325476, 0xc3d2e1f0};
    std::uint8_t block_[64] = {};
    std::size_t fill_ = 0;
    std::uint64_t total_ = 0;
};

} // namespace detail

/// SHA-1 of the payload in git blob framing ("blob <len>\0<payload>").
inline std::string content_hash(const std::string& payload) {
    detail::Sha1 h;
    const std::string header = "blob " + std::to_string(payload.size());
    h.update(header.data(), header.size() + 1); // include the NUL
    h.update(payload.data(), payload.size());
    return h.hex_digest();
}

} // namespace hjsweep

#endif // HJSWEEP_REPORT_HPP
