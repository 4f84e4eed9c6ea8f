#include "beattysum/report_json.hpp"

namespace bsum::report {

ordered_json big_integer(const mpz_class& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

ordered_json to_json(const harness::HarnessConfig& cfg) {
    return {{"Delta", cfg.Delta}, {"K", cfg.K}, {"R", cfg.R}, {"deltaClamped", cfg.clamped}};
}

ordered_json to_json(const harness::AuditReport& a) {
    return {{"N", a.N},
            {"config", to_json(a.config)},
            {"G", a.G},
            {"directSmoothed", a.direct_smoothed},
            {"fourierSide", a.fourier_side},
            {"hImag", a.h_imag},
            {"exchangeResidual", a.exchange_residual},
            {"smoothingGap", a.smoothing_gap},
            {"smoothingBudget", a.smoothing_budget},
            {"boundarySetSize", a.boundary_set_size}};
}

ordered_json to_json(const harness::TheoremReport& rep) {
    ordered_json meta = {{"alpha", rep.alpha},
                         {"beta", rep.beta},
                         {"functionId", rep.function_id},
                         {"N", rep.N},
                         {"config", to_json(rep.config)}};
    ordered_json results;
    results["G"] = rep.G_exact ? big_integer(*rep.G_exact) : ordered_json(rep.G);
    results["sumF"] = rep.sum_f_exact ? big_integer(*rep.sum_f_exact) : ordered_json(nullptr);
    results["mainTerm"] = rep.main_term;
    results["diff"] = rep.diff;
    results["envelope"] = rep.envelope;
    results["ratio"] = rep.ratio;
    results["normalizedDiff"] = rep.normalized_diff;
    results["pass"] = rep.pass;
    results["boundarySetSize"] = rep.boundary_set_size;
    results["discrepancy"] = rep.discrepancy;
    results["discrepancyPoints"] = rep.discrepancy_points;
    if (rep.audit) {
        results["residuals"] = {{"exchange", rep.audit->exchange_residual},
                                {"smoothingGap", rep.audit->smoothing_gap},
                                {"smoothingBudget", rep.audit->smoothing_budget},
                                {"hImag", rep.audit->h_imag}};
    } else {
        results["residuals"] = nullptr;
    }
    return {{"meta", std::move(meta)},
            {"results", std::move(results)},
            {"provenance", {{"sieveMethod", rep.sieve_method}, {"precisionMode", rep.precision_mode}}}};
}

ordered_json to_json(const harness::CorollaryReport& rep) {
    ordered_json meta = {{"corollary", rep.corollary},
                         {"alpha", rep.alpha},
                         {"beta", rep.beta},
                         {"functionId", rep.function_id},
                         {"N", rep.N}};
    ordered_json comps = ordered_json::array();
    for (const auto& c : rep.comparators)
        comps.push_back({{"name", c.name},
                         {"reference", c.reference},
                         {"observed", c.observed},
                         {"relativeDeviation", c.relative_deviation}});
    ordered_json results;
    results["beattySum"] = rep.beatty_exact ? big_integer(*rep.beatty_exact) : ordered_json(rep.beatty_value);
    results["globalSum"] = rep.global_exact ? big_integer(*rep.global_exact) : ordered_json(rep.global_value);
    results["comparators"] = std::move(comps);
    results["notes"] = rep.notes;
    return {{"meta", std::move(meta)},
            {"results", std::move(results)},
            {"provenance", {{"sieveMethod", rep.sieve_method}, {"precisionMode", rep.precision_mode}}}};
}

}  // namespace bsum::report
