#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stbc/construct.hpp"

namespace stbc {

enum class QamNorm { unit_energy, integer_grid };

/// Finite Gray-labeled constellation with an accumulated rotation angle.
/// Instances are immutable; rotate/scale return new objects.
class Constellation {
public:
    /// Gray-labeled square grid, m an even power of two. integer_grid puts the
    /// points on odd-integer pairs {+-1, +-3, ...}^2; unit_energy rescales to
    /// E[|p|^2] = 1.
    static Constellation square_qam(std::size_t m, QamNorm norm = QamNorm::unit_energy);

    /// m-PSK on the unit circle, Gray labeling, first point at angle
    /// phase_offset_rad (default 0, i.e. the point 1+0j).
    static Constellation mpsk(std::size_t m, double phase_offset_rad = 0.0);

    /// "qam4@13.29", "qpsk@31.7", "8psk@4.9", ... (name @ rotation degrees)
    static Constellation from_spec(const std::string& spec,
                                   QamNorm qam_norm = QamNorm::unit_energy);

    Constellation rotated(double theta_deg) const;
    Constellation scaled(double factor) const;

    std::size_t size() const { return points_.size(); }
    std::size_t bits_per_symbol() const { return bits_per_symbol_; }
    double rotation_deg() const { return rotation_deg_; }
    const std::string& name() const { return name_; }

    cplx point(std::size_t i) const { return points_[i]; }
    const std::vector<cplx>& points() const { return points_; }
    std::uint32_t label(std::size_t i) const { return labels_[i]; }

    double average_energy() const;

    /// bits (0/1 values, MSB first per symbol) -> symbols; length must divide
    /// into bits_per_symbol
    SymbolVector map_bits(const std::vector<std::uint8_t>& bits) const;
    /// nearest-point hard decision back to bits; exact inverse on noiseless input
    std::vector<std::uint8_t> demap(const SymbolVector& symbols) const;
    std::size_t nearest(cplx v) const;

private:
    Constellation() = default;

    std::string name_;
    std::vector<cplx> points_;
    std::vector<std::uint32_t> labels_;        // label of point i
    std::vector<std::uint32_t> point_of_label_;
    std::size_t bits_per_symbol_ = 0;
    double rotation_deg_ = 0.0;
};

/// spec-level alias for Constellation::rotated
Constellation rotate(const Constellation& c, double theta_deg);

} // namespace stbc
