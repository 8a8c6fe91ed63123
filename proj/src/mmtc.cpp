#include "slicesim/mmtc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace slicesim {

namespace {

// suffix[k] = sum of gains from rank k down; suffix[n] = 0. Built backward
// once so every denominator sees the same rounding of the same tail.
void sort_desc_with_suffix(std::vector<double>& g, std::vector<double>& suffix) {
    std::sort(g.begin(), g.end(), std::greater<double>());
    size_t n = g.size();
    suffix.assign(n + 1, 0.0);
    for (size_t k = n; k-- > 0;) suffix[k] = g[k] + suffix[k + 1];
}

struct TraceHelper {
    DecodeTrace* trace;
    std::string cancelled;

    void step(const std::string& id, double sinr, bool ok) {
        if (!trace) return;
        trace->push_back({id, sinr, std::log2(1.0 + sinr), ok, cancelled});
    }
    void cancel(const std::string& id) {
        if (!trace) return;
        if (!cancelled.empty()) cancelled += ",";
        cancelled += id;
    }
};

} // namespace

int oma_mmtc_decode(std::vector<double>& gains, double thr_m, DecodeTrace* trace) {
    static thread_local std::vector<double> suffix;
    sort_desc_with_suffix(gains, suffix);
    TraceHelper th{trace, {}};
    int n = static_cast<int>(gains.size());
    for (int i = 0; i < n; ++i) {
        double sinr = gains[i] / (1.0 + suffix[i + 1]);
        bool ok = sinr >= thr_m;
        th.step("M" + std::to_string(i), sinr, ok);
        if (!ok) return i;
        th.cancel("M" + std::to_string(i));
    }
    return n;
}

MmtcOutcome noma_mmtc_decode(std::vector<double>& gains, double g_tar,
                             double thr_m, double pow2_r_b, bool retry,
                             DecodeTrace* trace) {
    static thread_local std::vector<double> suffix;
    sort_desc_with_suffix(gains, suffix);
    TraceHelper th{trace, {}};
    int n = static_cast<int>(gains.size());

    MmtcOutcome out;
    double residual = g_tar; // undecoded broadband power
    double stalled = 0.0;    // skipped devices kept as interference (no retry)
    bool embb_done = false;
    int i = 0;
    while (i < n) {
        double sinr = gains[i] / (1.0 + suffix[i + 1] + stalled + residual);
        bool ok = sinr >= thr_m;
        th.step("M" + std::to_string(i), sinr, ok);
        if (ok) {
            th.cancel("M" + std::to_string(i));
            ++out.d_m;
            ++i;
            continue;
        }
        if (embb_done) return out; // second stall ends the walk
        double sb = residual / (1.0 + suffix[i] + stalled);
        out.d_b = (1.0 + sb) >= pow2_r_b;
        th.step("B", sb, out.d_b);
        embb_done = true;
        if (!out.d_b) return out;
        th.cancel("B");
        residual = 0.0;
        if (!retry) {
            stalled += gains[i];
            ++i;
        }
    }
    if (!embb_done) {
        double sb = residual / (1.0 + suffix[n] + stalled);
        out.d_b = (1.0 + sb) >= pow2_r_b;
        th.step("B", sb, out.d_b);
    }
    return out;
}

MmtcOutcome rsma_mmtc_decode(std::vector<double>& gains, double g_tar,
                             double beta, double thr_m, double pow2_r_b,
                             bool retry, DecodeTrace* trace) {
    static thread_local std::vector<double> suffix;
    sort_desc_with_suffix(gains, suffix);
    TraceHelper th{trace, {}};
    int n = static_cast<int>(gains.size());

    MmtcOutcome out;
    double residual = g_tar;
    double stalled = 0.0;
    int streams_left = 2;
    double prod = 1.0;    // running product of (1 + stream SINR)
    bool decided = false; // message test evaluated

    auto decode_stream = [&](int at) {
        double power, after;
        std::string id;
        if (streams_left == 2) {
            power = beta * g_tar;
            after = (1.0 - beta) * g_tar;
            id = "B1";
        } else {
            power = residual;
            after = 0.0;
            id = "B2";
        }
        double sb = power / (1.0 + suffix[at] + stalled + after);
        prod *= 1.0 + sb;
        residual = after;
        --streams_left;
        th.step(id, sb, true);
        th.cancel(id);
        if (residual == 0.0) { // no undecoded broadband power left
            decided = true;
            out.d_b = prod >= pow2_r_b;
        }
    };

    int i = 0;
    while (i < n) {
        double sinr = gains[i] / (1.0 + suffix[i + 1] + stalled + residual);
        bool ok = sinr >= thr_m;
        th.step("M" + std::to_string(i), sinr, ok);
        if (ok) {
            th.cancel("M" + std::to_string(i));
            ++out.d_m;
            ++i;
            continue;
        }
        if (decided) return out; // stall after the message test ends the walk
        decode_stream(i);
        if (decided && !out.d_b) return out; // message lost
        if (!retry) {
            stalled += gains[i];
            ++i;
        }
    }
    while (streams_left > 0 && !decided) decode_stream(n);
    return out;
}

} // namespace slicesim
