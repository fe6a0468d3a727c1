#pragma once

#include <optional>

#include "qcvol/choi.hpp"
#include "qcvol/numeric.hpp"
#include "qcvol/rng.hpp"

namespace qcvol {

enum class ChannelKind { general, unital };

/// Lebesgue volume of the proposal region of the rejection samplers:
/// (a, f) in [0,1]^2, b, c, g on disks of radius 1/2, d, e on unit disks.
double general_box_volume();
/// a in [0,1], b, c on disks of radius 1/2, d, e on unit disks.
double unital_box_volume();

/// One proposal from the bounding region. Returns the point if it is a strictly
/// positive definite Choi matrix. Remaining coordinates are drawn lazily, only
/// while the cheap necessary conditions still hold.
std::optional<GeneralChannelParams> rejection_trial_general(RngStream& rng);
std::optional<UnitalChannelParams> rejection_trial_unital(RngStream& rng);

GeneralChannelParams rejection_sample_general(RngStream& rng);
UnitalChannelParams rejection_sample_unital(RngStream& rng);

/// Exact samplers following the conditional chain (a,f) -> c -> (b,e) -> (d,g)
/// for general channels and a -> e -> (b,c) -> d for unital channels.
GeneralChannelParams sequential_sample_general(RngStream& rng);
UnitalChannelParams sequential_sample_unital(RngStream& rng);

/// Draws x in [lo, hi] with density proportional to the polynomial (assumed
/// nonnegative there) by bisection on its exact antiderivative, to 1e-12.
double sample_polynomial_density(const Polynomial& density, double lo, double hi, RngStream& rng);

/// Maximum of v_af over the unit square (grid search plus local polish).
double v_af_majorant();

}  // namespace qcvol
