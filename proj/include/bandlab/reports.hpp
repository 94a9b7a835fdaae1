#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bandlab/hamiltonian.hpp"
#include "bandlab/normal_form.hpp"
#include "bandlab/perturbation.hpp"
#include "bandlab/potential.hpp"
#include "bandlab/sectors.hpp"
#include "bandlab/tight_binding.hpp"

namespace bandlab {

/// Shortest decimal string that round-trips the double (17 significant digits).
std::string format_double(double x);

/// CSV `s,k1,k2,mu_1,...,mu_B`, one row per sample; s is the path arclength
/// (or the row-major grid index in surface mode).
std::string band_csv(const BandStructure& bands);

/// CSV `s,k1,k2,E_minus,E_zero,E_plus`.
std::string tb_csv(const std::vector<TBBands>& bands, const std::vector<double>& arclength);

nlohmann::json sectors_json(const std::vector<SectorSpectrum>& spectra, double eps);
nlohmann::json prediction_json(const FirstOrderPrediction& p, const OrderingCase& oc,
                               const LeadingCoefficients* lead);
nlohmann::json normalform_json(const ResolventReport& res, const FitResult* fit);
nlohmann::json deform_json(const DeformationSplitting& d, double eta,
                           double measured_gap);
nlohmann::json validation_json(const SymmetryReport& rep);
nlohmann::json tb_contrast_json(const TBContrastReport& rep);

void write_file(const std::string& path, const std::string& content);

}  // namespace bandlab
