#pragma once

#include <string>
#include <vector>

namespace slicesim {

// Machine-type slice SIC procedures on a single frequency. Gains are sorted
// descending in place; decode checks compare SINR against thr_m = 2^r_m - 1
// and the broadband success test compares prod(1+sinr_stream) against
// pow2_r_b = 2^r_b, so grid endpoints decode exactly at zero interference.

struct DecodeStep {
    std::string stream; // "M3", "B", "B1", "B2"
    double sinr = 0.0;
    double rate = 0.0; // log2(1+sinr)
    bool success = false;
    std::string cancelled; // streams cancelled before this step
};
using DecodeTrace = std::vector<DecodeStep>;

struct MmtcOutcome {
    int d_m = 0;      // devices decoded
    bool d_b = false; // broadband message recovered
};

// Plain near-far SIC, stops at the first miss. Returns devices decoded.
int oma_mmtc_decode(std::vector<double>& gains, double thr_m,
                    DecodeTrace* trace = nullptr);

// Broadband signal decoded at the first device miss; on success its power is
// cancelled and, with retry on, the missed device is attempted again. A miss
// after the broadband decode ends the walk.
MmtcOutcome noma_mmtc_decode(std::vector<double>& gains, double g_tar,
                             double thr_m, double pow2_r_b, bool retry,
                             DecodeTrace* trace = nullptr);

// Split broadband signal: stream a (power fraction beta) decoded
// unconditionally at the first miss, stream b at the second; the message
// test runs once no undecoded broadband power remains (after stream b, or
// already after stream a when beta == 1). Streams still pending when the
// device list runs out decode interference-free at the end.
MmtcOutcome rsma_mmtc_decode(std::vector<double>& gains, double g_tar,
                             double beta, double thr_m, double pow2_r_b,
                             bool retry, DecodeTrace* trace = nullptr);

} // namespace slicesim
