#include "stbc/modem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stbc/errors.hpp"

namespace stbc {

namespace {

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t log2_exact(std::size_t m) {
    std::size_t b = 0;
    while ((1u << b) < m) ++b;
    return b;
}

} // namespace

Constellation Constellation::square_qam(std::size_t m, QamNorm norm) {
    if (m < 4 || !is_pow2(m) || log2_exact(m) % 2 != 0) {
        throw DomainError("square_qam: order " + std::to_string(m) +
                          " is not an even power of two");
    }
    const std::size_t bps = log2_exact(m);
    const std::size_t axis_bits = bps / 2;
    const std::size_t side = 1u << axis_bits;
    Constellation c;
    c.name_ = "qam" + std::to_string(m);
    c.bits_per_symbol_ = bps;
    c.points_.reserve(m);
    c.labels_.reserve(m);
    for (std::size_t ix = 0; ix < side; ++ix) {
        for (std::size_t iy = 0; iy < side; ++iy) {
            const double re = 2.0 * static_cast<double>(ix) - static_cast<double>(side - 1);
            const double im = 2.0 * static_cast<double>(iy) - static_cast<double>(side - 1);
            c.points_.emplace_back(re, im);
            c.labels_.push_back((gray(static_cast<std::uint32_t>(ix)) << axis_bits) |
                                gray(static_cast<std::uint32_t>(iy)));
        }
    }
    c.point_of_label_.resize(m);
    for (std::size_t i = 0; i < m; ++i) c.point_of_label_[c.labels_[i]] = static_cast<std::uint32_t>(i);
    if (norm == QamNorm::unit_energy) {
        const double scale = 1.0 / std::sqrt(c.average_energy());
        for (cplx& p : c.points_) p *= scale;
    }
    return c;
}

Constellation Constellation::mpsk(std::size_t m, double phase_offset_rad) {
    if (m < 2 || !is_pow2(m)) {
        throw DomainError("mpsk: order " + std::to_string(m) + " is not a power of two >= 2");
    }
    Constellation c;
    c.name_ = std::to_string(m) + "psk";
    c.bits_per_symbol_ = log2_exact(m);
    c.points_.reserve(m);
    c.labels_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double phi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m) +
                           phase_offset_rad;
        c.points_.emplace_back(std::cos(phi), std::sin(phi));
        c.labels_.push_back(gray(static_cast<std::uint32_t>(k)));
    }
    c.point_of_label_.resize(m);
    for (std::size_t i = 0; i < m; ++i) c.point_of_label_[c.labels_[i]] = static_cast<std::uint32_t>(i);
    return c;
}

Constellation Constellation::from_spec(const std::string& spec, QamNorm qam_norm) {
    std::string name = spec;
    double rot = 0.0;
    if (const auto at = spec.find('@'); at != std::string::npos) {
        name = spec.substr(0, at);
        try {
            std::size_t used = 0;
            rot = std::stod(spec.substr(at + 1), &used);
            if (used != spec.size() - at - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("constellation spec '" + spec + "': bad rotation angle");
        }
    }
    const auto parse_order = [&](const std::string& digits) {
        try {
            std::size_t used = 0;
            const unsigned long m = std::stoul(digits, &used);
            if (used != digits.size()) throw std::invalid_argument("trailing");
            return static_cast<std::size_t>(m);
        } catch (const std::exception&) {
            throw ConfigError("constellation spec '" + spec + "': bad order '" + digits + "'");
        }
    };
    Constellation base = [&]() {
        if (name == "bpsk") return mpsk(2);
        if (name == "qpsk") return mpsk(4);
        if (name.rfind("qam", 0) == 0) return square_qam(parse_order(name.substr(3)), qam_norm);
        if (name.size() > 3 && name.substr(name.size() - 3) == "psk")
            return mpsk(parse_order(name.substr(0, name.size() - 3)));
        throw ConfigError("constellation spec '" + spec +
                          "': expected qam<M>, <M>psk, qpsk or bpsk");
    }();
    return rot == 0.0 ? base : base.rotated(rot);
}

Constellation Constellation::rotated(double theta_deg) const {
    Constellation c = *this;
    const cplx w = std::polar(1.0, theta_deg * M_PI / 180.0);
    for (cplx& p : c.points_) p *= w;
    c.rotation_deg_ += theta_deg;
    return c;
}

Constellation Constellation::scaled(double factor) const {
    Constellation c = *this;
    for (cplx& p : c.points_) p *= factor;
    return c;
}

double Constellation::average_energy() const {
    double e = 0.0;
    for (const cplx& p : points_) e += std::norm(p);
    return e / static_cast<double>(points_.size());
}

SymbolVector Constellation::map_bits(const std::vector<std::uint8_t>& bits) const {
    if (bits.size() % bits_per_symbol_ != 0) {
        throw FramingError("map_bits: " + std::to_string(bits.size()) +
                           " bits not divisible by " + std::to_string(bits_per_symbol_));
    }
    SymbolVector out;
    out.reserve(bits.size() / bits_per_symbol_);
    for (std::size_t pos = 0; pos < bits.size(); pos += bits_per_symbol_) {
        std::uint32_t label = 0;
        for (std::size_t b = 0; b < bits_per_symbol_; ++b)
            label = (label << 1) | (bits[pos + b] ? 1u : 0u);
        out.push_back(points_[point_of_label_[label]]);
    }
    return out;
}

std::vector<std::uint8_t> Constellation::demap(const SymbolVector& symbols) const {
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size() * bits_per_symbol_);
    for (const cplx& s : symbols) {
        const std::uint32_t label = labels_[nearest(s)];
        for (std::size_t b = bits_per_symbol_; b-- > 0;)
            out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return out;
}

std::size_t Constellation::nearest(cplx v) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double d = std::norm(v - points_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Constellation rotate(const Constellation& c, double theta_deg) { return c.rotated(theta_deg); }

} // namespace stbc
