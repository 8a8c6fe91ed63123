#include "slicesim/channel.hpp"

namespace slicesim {

void fill_exponential(RandomStream& rs, double mean, double* out, int n) {
    for (int i = 0; i < n; ++i) out[i] = rs.next_exponential(mean);
}

std::vector<double> draw_mmtc_gains(RandomStream& rs, double gamma_m, double lambda_m) {
    uint64_t n_m = rs.next_poisson(lambda_m);
    std::vector<double> g(n_m);
    fill_exponential(rs, gamma_m, g.data(), static_cast<int>(n_m));
    return g;
}

ChannelDraw draw_channels(const ChannelDims& dims, uint64_t seed, uint64_t trial) {
    RandomStream rs(seed, trial);
    ChannelDraw draw;
    draw.g_b.resize(dims.f_total);
    fill_exponential(rs, dims.gamma_b, draw.g_b.data(), dims.f_total);
    draw.g_u.resize(static_cast<size_t>(dims.n_urllc) * dims.f_total);
    fill_exponential(rs, dims.gamma_u, draw.g_u.data(),
                     dims.n_urllc * dims.f_total);
    draw.g_m = draw_mmtc_gains(rs, dims.gamma_m, dims.lambda_m);
    return draw;
}

} // namespace slicesim
