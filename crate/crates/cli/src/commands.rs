use ionring::model::{unit_flux_diameter, unit_flux_frequency, RingConfig, Species};
use ionring::modes::{circulant_frequencies, mode_spectrum};
use ionring::planner::{feasibility_report, quasicrystal_analysis, Thresholds};
use ionring::spectrum::{diameter_sweep, flux_sweep, reduced_energy_gap, reduced_ground_state, reduced_level};
use ionring::thermal::{thermal_curve, thermal_point_for_ring};
use ionring::{ConstantSet, HalfInt, Ladder, SpeciesRegistry, Statistics};

use crate::args::{
    Command, DiameterArgs, FluxArgs, Method, ModesArgs, PlanArgs, QuasiArgs, RingArgs, SpectrumArgs, ThermalArgs,
};
use crate::grid::{fmt_f64, Grid};
use crate::output::{Cell, Document, Table};
use crate::CliError;

pub struct Output {
    pub doc: Document,
    pub units: &'static str,
    pub notes: Vec<String>,
}

const REDUCED: &str = "reduced (E*, omega*, T*)";
const SI: &str = "SI (J, rad/s, K, m, T)";
const DIMENSIONLESS: &str = "dimensionless";

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Species from --species / --custom, or None when neither is given.
fn species(ring: &RingArgs, constants: &ConstantSet) -> Result<Option<Species>, CliError> {
    let mut registry = SpeciesRegistry::builtin(constants);
    if let Some(path) = &ring.species_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read species file {}: {e}", path.display())))?;
        registry = registry.extend_from_toml(&text)?;
    }
    let species = match (&ring.species, &ring.custom) {
        (Some(name), _) => Some(registry.lookup(name)?),
        (None, Some(triple)) => {
            let parts: Vec<&str> = triple.split(',').map(str::trim).collect();
            let [m, q, s] = parts.as_slice() else {
                return Err(usage(format!("--custom expects MASS_U,CHARGE_E,STATISTICS, got '{triple}'")));
            };
            let mass_u: f64 = m.parse().map_err(|_| usage(format!("--custom: bad mass '{m}'")))?;
            let charge_e: f64 = q.parse().map_err(|_| usage(format!("--custom: bad charge '{q}'")))?;
            let stats: Statistics = s.parse().map_err(|_| usage(format!("--custom: bad statistics '{s}'")))?;
            Some(Species::new(
                "custom",
                mass_u * constants.atomic_mass_unit,
                charge_e * constants.elementary_charge,
                stats,
            )?)
        }
        (None, None) => None,
    };
    match (species, &ring.statistics) {
        (Some(sp), Some(s)) => Ok(Some(sp.with_statistics(parse_statistics(s)?))),
        (sp, _) => Ok(sp),
    }
}

fn parse_statistics(s: &str) -> Result<Statistics, CliError> {
    s.parse().map_err(|_| usage(format!("unknown statistics '{s}' (boson, fermion, distinguishable)")))
}

/// Ladder for reduced-unit work: statistics from --statistics, else the
/// species, else bosons. Fermions need --n because the ladder depends on parity.
fn ladder(ring: &RingArgs, species: Option<&Species>) -> Result<Ladder, CliError> {
    let stats = match (&ring.statistics, species) {
        (Some(s), _) => parse_statistics(s)?,
        (None, Some(sp)) => sp.statistics,
        (None, None) => Statistics::Boson,
    };
    let n = match (ring.n, stats) {
        (Some(n), _) => n,
        (None, Statistics::Fermion) => return Err(usage("--n is required for fermions (the ladder depends on its parity)")),
        (None, _) => 1,
    };
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    Ok(Ladder::new(stats, n))
}

fn ring_config(ring: &RingArgs, constants: &ConstantSet) -> Result<RingConfig, CliError> {
    let sp = species(ring, constants)?.ok_or_else(|| usage("SI mode needs --species or --custom"))?;
    let n = ring.n.ok_or_else(|| usage("SI mode needs --n"))?;
    let d = ring.d.ok_or_else(|| usage("SI mode needs --d"))?;
    let cfg = match (&ring.alpha, ring.b) {
        (Some(grid), None) => {
            let alpha = grid.scalar().ok_or_else(|| usage("--alpha must be a single value for an SI ring"))?;
            RingConfig::new(sp, n, d, 0.0)?.with_constants(*constants).with_flux(alpha)
        }
        (None, b) => RingConfig::new(sp, n, d, b.unwrap_or(0.0))?.with_constants(*constants),
        (Some(_), Some(_)) => return Err(usage("give either --b or --alpha, not both")),
    };
    Ok(cfg)
}

fn alpha_grid(ring: &RingArgs) -> Result<Vec<f64>, CliError> {
    ring.alpha.as_ref().map(Grid::values).ok_or_else(|| usage("--alpha is required"))
}

pub fn run(cmd: &Command, constants: &ConstantSet) -> Result<Output, CliError> {
    match cmd {
        Command::Modes(a) => modes(a),
        Command::Spectrum(a) => spectrum(a, constants),
        Command::FluxSweep(a) => flux(a, constants),
        Command::DiameterSweep(a) => diameter(a, constants),
        Command::Thermal(a) => thermal(a, constants),
        Command::Plan(a) => plan(a, constants),
        Command::Quasicrystal(a) => quasicrystal(a, constants),
    }
}

fn modes(a: &ModesArgs) -> Result<Output, CliError> {
    let mut t = Table { columns: vec!["j".into(), "omega_j".into()], rows: Vec::new() };
    match a.method {
        Method::Dense => {
            let spec = mode_spectrum::<f64>(a.n)?;
            if a.vectors {
                t.columns.extend((1..=a.n).map(|i| format!("v_{i}")));
            }
            for (j, w) in spec.frequencies.iter().enumerate() {
                let mut row = vec![Cell::I(j as i64 + 1), Cell::F(*w)];
                if a.vectors {
                    row.extend(spec.mode_vectors.column(j).iter().map(|x| Cell::F(*x)));
                }
                t.rows.push(row);
            }
        }
        Method::Circulant => {
            if a.vectors {
                return Err(usage("--vectors needs --method dense"));
            }
            for (j, w) in circulant_frequencies::<f64>(a.n)?.into_iter().enumerate() {
                t.rows.push(vec![Cell::I(j as i64 + 1), Cell::F(w)]);
            }
        }
    }
    Ok(Output { doc: Document::Table(t), units: DIMENSIONLESS, notes: Vec::new() })
}

fn spectrum(a: &SpectrumArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    if a.window < 1 {
        return Err(usage("--window must be at least 1"));
    }
    let (alpha, ladder, scales) = if a.ring.si() {
        let ring = ring_config(&a.ring, constants)?;
        let c = ring.characterize();
        (c.alpha, Ladder::of(&ring), Some((c.e_star, c.omega_star)))
    } else {
        let alpha = alpha_grid(&a.ring)?;
        let [alpha] = alpha.as_slice() else {
            return Err(usage("spectrum takes a single --alpha"));
        };
        (*alpha, ladder(&a.ring, species(&a.ring, constants)?.as_ref())?, None)
    };
    let g = reduced_ground_state(alpha, ladder);
    let ground: Vec<HalfInt> = std::iter::once(g.n1).chain(g.partner.map(|p| p.0)).collect();
    let mut t = Table { columns: vec!["n1".into(), "E_over_Estar".into(), "omega_over_omegastar".into()], rows: Vec::new() };
    if scales.is_some() {
        t.columns.extend(["E_J".into(), "omega_rad_s".into()]);
    }
    t.columns.push("is_ground".into());
    for n1 in ladder.around(alpha, a.window as i64) {
        let (e, w) = reduced_level(n1, alpha);
        let mut row = vec![Cell::S(n1.to_string()), Cell::F(e), Cell::F(w)];
        if let Some((es, ws)) = scales {
            row.extend([Cell::F(e * es), Cell::F(w * ws)]);
        }
        row.push(Cell::B(ground.contains(&n1)));
        t.rows.push(row);
    }
    let notes = vec![
        format!("alpha: {}", fmt_f64(alpha)),
        format!("ladder: {} N={}", ladder.statistics, ladder.n_ions),
        format!("energy_gap_over_Estar: {}", fmt_f64(reduced_energy_gap(alpha, ladder))),
        format!("degenerate: {}", g.is_degenerate()),
    ];
    Ok(Output { doc: Document::Table(t), units: if scales.is_some() { SI } else { REDUCED }, notes })
}

fn flux(a: &FluxArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    let ladder = ladder(&a.ring, species(&a.ring, constants)?.as_ref())?;
    let sweep = flux_sweep(ladder, &alpha_grid(&a.ring)?, a.window)?;
    let mut columns = vec!["alpha".to_string()];
    columns.extend(sweep.quantum_numbers.iter().map(|n| format!("E_over_Estar_n{n}")));
    columns.extend(["omega_gs_over_omegastar", "degenerate", "omega_partner_over_omegastar"].map(String::from));
    let rows = sweep
        .rows
        .into_iter()
        .map(|r| {
            let mut row = vec![Cell::F(r.alpha)];
            row.extend(r.energies.into_iter().map(Cell::F));
            row.extend([Cell::F(r.omega_gs), Cell::B(r.degenerate), r.partner_omega.into()]);
            row
        })
        .collect();
    let notes = vec![format!("ladder: {} N={}", ladder.statistics, ladder.n_ions)];
    Ok(Output { doc: Document::Table(Table { columns, rows }), units: REDUCED, notes })
}

fn diameter(a: &DiameterArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    let sp = species(&a.ring, constants)?;
    let ladder = ladder(&a.ring, sp.as_ref())?;
    let grid = a.x.values();
    let charge_sign = sp.as_ref().map_or(1.0, |s| s.charge.signum());
    let si = match (a.ring.b, &sp) {
        (Some(b), Some(s)) if !a.ring.reduced => {
            if b == 0.0 {
                return Err(CliError::Domain("diameter sweep needs a nonzero field".into()));
            }
            Some((unit_flux_diameter(s, b.abs(), constants), unit_flux_frequency(s, b.abs()), b.signum()))
        }
        (Some(_), None) if !a.ring.reduced => return Err(usage("--b needs --species or --custom for SI columns")),
        _ => None,
    };
    let field_sign = si.map_or(1.0, |(_, _, s)| s);
    // B0 only fixes the units here; the reduced sweep is field-independent.
    let rows = diameter_sweep(ladder, charge_sign * field_sign, 1.0, &grid)?;
    let mut columns: Vec<String> =
        ["d_over_d0", "omega_over_omegastar0", "n1_star", "degenerate"].map(String::from).to_vec();
    if si.is_some() {
        columns.extend(["d_m".into(), "omega_rad_s".into()]);
    }
    let rows = rows
        .into_iter()
        .map(|r| {
            let mut row = vec![Cell::F(r.x), Cell::F(r.omega), Cell::S(r.n1.to_string()), Cell::B(r.degenerate)];
            if let Some((d0, w0, _)) = si {
                row.extend([Cell::F(r.x * d0), Cell::F(r.omega * w0)]);
            }
            row
        })
        .collect();
    let mut notes = vec![format!("ladder: {} N={}", ladder.statistics, ladder.n_ions)];
    if let Some((d0, w0, _)) = si {
        notes.push(format!("d0_m: {}", fmt_f64(d0)));
        notes.push(format!("omegastar0_rad_s: {}", fmt_f64(w0)));
    }
    Ok(Output {
        doc: Document::Table(Table { columns, rows }),
        units: if si.is_some() { SI } else { REDUCED },
        notes,
    })
}

fn thermal(a: &ThermalArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    let temps = a.t.values();
    if a.ring.si() {
        let ring = ring_config(&a.ring, constants)?;
        let c = ring.characterize();
        let columns = [
            "T_K", "alpha", "T_over_Tstar", "omega_bar_over_omegastar", "omega_bar_rad_s", "Z", "halfwidth", "tail_bound",
        ]
        .map(String::from)
        .to_vec();
        let rows = temps
            .iter()
            .map(|&k| {
                let p = thermal_point_for_ring(&ring, k)?;
                Ok(vec![
                    Cell::F(k),
                    Cell::F(p.alpha),
                    Cell::F(p.t_over_tstar),
                    Cell::F(p.omega_bar_over_omegastar),
                    Cell::F(p.omega_bar_over_omegastar * c.omega_star),
                    Cell::F(p.partition_function),
                    Cell::I(p.truncation_halfwidth as i64),
                    Cell::F(p.tail_bound),
                ])
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let notes = vec![format!("t_star_K: {}", fmt_f64(c.t_star)), format!("omega_star_rad_s: {}", fmt_f64(c.omega_star))];
        return Ok(Output { doc: Document::Table(Table { columns, rows }), units: SI, notes });
    }
    let ladder = ladder(&a.ring, species(&a.ring, constants)?.as_ref())?;
    let points = thermal_curve(&alpha_grid(&a.ring)?, &temps, ladder.statistics, ladder.n_ions)?;
    let columns = ["alpha", "T_over_Tstar", "omega_bar_over_omegastar", "Z", "halfwidth", "tail_bound"]
        .map(String::from)
        .to_vec();
    let rows = points
        .into_iter()
        .map(|p| {
            vec![
                Cell::F(p.alpha),
                Cell::F(p.t_over_tstar),
                Cell::F(p.omega_bar_over_omegastar),
                Cell::F(p.partition_function),
                Cell::I(p.truncation_halfwidth as i64),
                Cell::F(p.tail_bound),
            ]
        })
        .collect();
    let notes = vec![format!("ladder: {} N={}", ladder.statistics, ladder.n_ions)];
    Ok(Output { doc: Document::Table(Table { columns, rows }), units: REDUCED, notes })
}

fn plan(a: &PlanArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    if a.ring.reduced {
        return Err(usage("plan works in SI units only"));
    }
    let ring = ring_config(&a.ring, constants)?;
    let thresholds = Thresholds { crystal_ratio: a.crystal_threshold, kick_ratio: a.kick_threshold };
    let report = feasibility_report(&ring, a.waist, a.l, a.delta_t, thresholds)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    let notes = vec![format!("all_passed: {}", report.all_passed())];
    Ok(Output { doc: Document::Report(value), units: SI, notes })
}

fn quasicrystal(a: &QuasiArgs, constants: &ConstantSet) -> Result<Output, CliError> {
    if a.ring.reduced {
        return Err(usage("quasicrystal works in SI units only"));
    }
    let ring1 = ring_config(&a.ring, constants)?;
    let ring2 = RingConfig::new(ring1.species.clone(), a.n2.unwrap_or(ring1.n_ions), a.d2, ring1.b_field)?
        .with_constants(*constants);
    let analysis = quasicrystal_analysis(&ring1, &ring2, a.q_max, a.tolerance)?;
    let value = serde_json::to_value(&analysis).expect("analysis serializes");
    let notes = vec![
        format!("alpha1: {}", fmt_f64(ring1.alpha())),
        format!("alpha2: {}", fmt_f64(ring2.alpha())),
    ];
    Ok(Output { doc: Document::Report(value), units: SI, notes })
}
