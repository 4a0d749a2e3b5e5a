#include "twinbeam/setup.hpp"

#include "twinbeam/units.hpp"

namespace twinbeam {

Setup make_setup(const CrystalSpec& crystal, const PumpSpec& pump, const FilterOverrides& o) {
    pump.validate();
    Dispersion disp(crystal, pump.wavelength);
    DispersionCoeffs coeffs = taylor_coefficients(disp);
    PqdaParams geom = pqda_geometry(coeffs, crystal.length);
    FilterSpec f = default_filter(geom, o.qy_max.value_or(default_qy_max));
    if (o.qx_min) f.qx_min = *o.qx_min;
    if (o.qx_max) f.qx_max = *o.qx_max;
    if (o.Omega_max)
        f.Omega_max = *o.Omega_max;
    else if (o.qx_max && *o.qx_max >= geom.q_d)
        f.Omega_max = omega_pm(geom, *o.qx_max);
    f.validate();
    return Setup{disp, coeffs, pqda_params(coeffs, crystal.length, f), pump, f};
}

Setup bbo_setup(double duration_fs, double waist_um) {
    PumpSpec p;
    p.wavelength = 0.3975;
    p.duration = duration_fs;
    p.waist = waist_um;
    return make_setup(CrystalSpec::bbo_eimerl87(2000.0, deg(29.62)), p);
}

}  // namespace twinbeam
