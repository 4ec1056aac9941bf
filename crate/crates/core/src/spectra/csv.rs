use std::io::{self, Write};

use super::spectrum::SpectrumSeries;
use super::transfer::ScatteringProfile;

pub const HEADER: &str =
    "omega,omega_minus_omega_c,FL_1,FL_2,FL_3,FL_4,FL_5,FL_6,FR_1,FR_2,FR_3,FR_4,FR_5,FR_6,S_in,S_out_L,S_out_R";

/// Scientific notation with 12 significant digits.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.11e}")
}

/// One row per grid point. `S_in` is the left-port input; both ports carry
/// the same photon in every configuration this crate builds.
pub fn write_spectrum_csv<W: Write + ?Sized>(
    out: &mut W,
    profile: &ScatteringProfile,
    series: &SpectrumSeries,
    photon_center: f64,
) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for (i, &w) in profile.grid.points().iter().enumerate() {
        let mut fields = Vec::with_capacity(17);
        fields.push(fmt_sci(w));
        fields.push(fmt_sci(w - photon_center));
        fields.extend(profile.prob_l[i].iter().map(|&f| fmt_sci(f)));
        fields.extend(profile.prob_r[i].iter().map(|&f| fmt_sci(f)));
        fields.push(fmt_sci(series.s_in_l[i]));
        fields.push(fmt_sci(series.s_out_l[i]));
        fields.push(fmt_sci(series.s_out_r[i]));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}
