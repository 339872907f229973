#pragma once

#include <cstddef>
#include <vector>

#include "lipmin/minorant.hpp"
#include "lipmin/paths.hpp"

namespace lipmin {

/// Path segment between two consecutive contact times, rebased so that both
/// time and value start at 0.
struct Excursion {
  double start = 0.0;          ///< contact time T_n
  std::vector<double> times;   ///< t - T_n, first 0, last ζ
  std::vector<double> values;  ///< X_{T_n+t} - X_{T_n} (X ∧ X_- at sample points)

  double lifetime() const noexcept { return times.empty() ? 0.0 : times.back(); }
};

struct ExcursionFeatures {
  double zeta = 0.0;          ///< lifetime
  double L = 0.0;             ///< time of the minorant peak
  double zeta_minus_L = 0.0;  ///< time from the peak to the end
  double w_zeta = 0.0;        ///< final value
  double h = 0.0;             ///< path minus minorant at the peak
};

struct ExcursionBatch {
  std::vector<Excursion> excursions;
  bool too_few_contacts = false;
};

/// Excursions between consecutive contacts from D onwards whose endpoints both
/// stay at least `buffer` away from the window edges.
ExcursionBatch extract_generic_excursions(const GridPath& path, const ContactTimes& contacts,
                                          double buffer);

struct StraddlingExcursion {
  double G;
  double D;
  Excursion excursion;  ///< rebased at G, lifetime D - G
};

/// The excursion containing time 0. Throws WindowError if G or D is missing.
StraddlingExcursion straddling_excursion(const GridPath& path, const ContactTimes& contacts);

/// ζ, w_ζ from the endpoints; L from the sawtooth apex of (0, 0, ζ, w_ζ);
/// h at the sample nearest L, measured against the sawtooth.
/// Throws std::invalid_argument when |w_ζ| > αζ (corrupt excursion).
ExcursionFeatures excursion_features(const Excursion& exc, double alpha);

}  // namespace lipmin
