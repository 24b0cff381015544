#include "divsearch/types.hpp"

#include <cmath>
#include <sstream>

namespace divsearch {

Corpus::Corpus(std::vector<std::string> texts) : texts_(std::move(texts)) {
    for (const auto& t : texts_) {
        max_len_ = std::max(max_len_, t.size());
        total_len_ += t.size();
    }
}

double Corpus::mean_length() const noexcept {
    return texts_.empty() ? 0.0 : static_cast<double>(total_len_) / static_cast<double>(texts_.size());
}

std::uint64_t Corpus::checksum() const noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    for (const auto& t : texts_) {
        std::uint64_t len = t.size();
        for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(len >> (8 * i)));
        for (char c : t) mix(static_cast<unsigned char>(c));
    }
    return h;
}

void SearchParams::validate() const {
    std::ostringstream why;
    if (!(lambda >= 0.0 && lambda <= 1.0)) why << "lambda must lie in [0, 1]; ";
    if (k_min == 0) why << "k_min must be positive; ";
    if (k_max == 0) why << "k_max must be positive; ";
    if (k_min > k_max) why << "k_min must not exceed k_max; ";
    if (!(sigma > 0.0 && sigma < 0.5)) why << "sigma must lie in (0, 0.5); ";
    if (!(omega > 0.5 && omega < 1.0)) why << "omega must lie in (0.5, 1); ";
    if (gram_len == 0) why << "gram_len must be positive; ";
    auto msg = why.str();
    if (!msg.empty()) {
        msg.resize(msg.size() - 2);
        throw Error(ErrorKind::InvalidParams, msg);
    }
}

SearchParams SearchParams::make(double lambda, std::size_t k_min, std::size_t k_max,
                                std::size_t epsilon0, double sigma, double omega,
                                std::size_t gram_len) {
    SearchParams p{lambda, k_min, k_max, epsilon0, sigma, omega, gram_len};
    p.validate();
    return p;
}

// (lambda + 1) * k is computed in binary floating point, so 1.1 * 50 lands a
// hair above 55; the slack keeps exact products from rounding the wrong way.
namespace {
constexpr double kRoundingSlack = 1e-9;
}

std::size_t SearchParams::pool_floor() const noexcept {
    return static_cast<std::size_t>(std::ceil((lambda + 1.0) * static_cast<double>(k_min) - kRoundingSlack));
}

std::size_t SearchParams::pool_cap() const noexcept {
    return static_cast<std::size_t>(std::floor((lambda + 1.0) * static_cast<double>(k_max) + kRoundingSlack));
}

}  // namespace divsearch
