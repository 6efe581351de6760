//! Registry of reproducible experiments. Every sweep runs on a fixed grid;
//! points are evaluated in parallel and assembled in grid order.

use std::f64::consts::PI;

use rayon::prelude::*;

use qheat::continuous::{maser_steady_currents, qar_cooling_predicted, qar_steady_cooling, MaserSpec, QarSpec};
use qheat::cycles::{carnot_quasistatic_tls, otto_quasistatic, Medium};
use qheat::fluctuations::{biased_hopping_statistics, cycle_joint_distribution, efficiency_distribution, tur_check};
use qheat::hilbert::{c, qubit};
use qheat::information::{binary_entropy, erasure_work, measurement_engine_energetics, steering_work_bound};
use qheat::nonthermal::{
    generalized_carnot, phaseonium_efficiency, phaseonium_temperature, squeezed_eff_max_power, squeezed_otto_cycle,
    PhaseoniumSpec, SqueezedOttoSpec,
};
use qheat::thermoelectric::{harvester_current, landauer_currents, max_efficiency_ratio, sis_currents};
use qheat::{LeadSpec, Operator, StrokeProtocol, TransmissionFunction};

use crate::dataset::{number, Dataset};
use crate::error::{CliError, CliResult};
use crate::params::{linspace, logspace, points, real, ParamDef, Params};

pub struct Experiment {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamDef],
    pub run: fn(&Params) -> CliResult<Dataset>,
}

impl std::fmt::Debug for Experiment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Experiment").field("id", &self.id).finish_non_exhaustive()
    }
}

/// Evaluates `f` at every grid point in parallel; rows keep grid order and
/// the first failing point (in grid order) is reported.
fn sweep<F>(grid: &[f64], f: F) -> CliResult<Vec<Vec<f64>>>
where
    F: Fn(f64) -> CliResult<Vec<f64>> + Sync,
{
    let rows: Vec<CliResult<Vec<f64>>> = grid.par_iter().map(|&x| f(x)).collect();
    rows.into_iter().collect()
}

fn ctx(id: &'static str, var: &'static str, x: f64) -> impl Fn(qheat::Error) -> CliError {
    move |e| CliError::from_core(format!("{id} at {var} = {x}"), e)
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn otto_sweep(p: &Params) -> CliResult<Dataset> {
    let (wc, t_h, t_c) = (p.get("omega_c"), p.get("t_h"), p.get("t_c"));
    let grid = linspace(p.get("omega_h_min"), p.get("omega_h_max"), p.count("points"));
    let rows = sweep(&grid, |wh| {
        let e = ctx("otto-sweep", "omega_h", wh);
        let tls = otto_quasistatic(Medium::Tls, wc, wh, t_h, t_c).map_err(&e)?;
        let ho = otto_quasistatic(Medium::Ho, wc, wh, t_h, t_c).map_err(&e)?;
        Ok(vec![wh, tls.work, ho.work, tls.efficiency.unwrap_or(f64::NAN)])
    })?;
    Ok(Dataset::new(vec!["omega_h", "W_tls", "W_ho", "eta"], rows)
        .with_note("W < 0 is work extracted; eta is reported only in engine mode"))
}

fn carnot(p: &Params) -> CliResult<Dataset> {
    let (ea, eb, t_h) = (p.get("eps_a"), p.get("eps_b"), p.get("t_h"));
    let grid = linspace(p.get("t_c_min"), p.get("t_c_max"), p.count("points"));
    let rows = sweep(&grid, |t_c| {
        let r = carnot_quasistatic_tls(ea, eb, t_h, t_c).map_err(ctx("carnot", "t_c", t_c))?;
        Ok(vec![t_c, r.work, r.q_h, r.q_c, r.efficiency.unwrap_or(f64::NAN)])
    })?;
    Ok(Dataset::new(vec!["t_c", "W", "Q_h", "Q_c", "eta"], rows))
}

fn maser_spec(p: &Params, t_h: f64) -> MaserSpec {
    let (wh, wc) = (p.get("omega_h"), p.get("omega_c"));
    MaserSpec {
        omega1: 0.0,
        omega2: wh - wc,
        omega3: wh,
        gamma_h: p.get("gamma_h"),
        gamma_c: p.get("gamma_c"),
        gamma_w: p.get("gamma_w"),
        t_h,
        t_c: p.get("t_c"),
    }
}

fn maser_sweep(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(p.get("t_h_min"), p.get("t_h_max"), p.count("points"));
    let rows = sweep(&grid, |t_h| {
        let c = maser_steady_currents(&maser_spec(p, t_h)).map_err(ctx("maser-sweep", "t_h", t_h))?;
        Ok(vec![t_h, c.j_h, c.j_c, c.power])
    })?;
    let t_rev = p.get("t_c") * p.get("omega_h") / p.get("omega_c");
    Ok(Dataset::new(vec!["t_h", "J_h", "J_c", "P"], rows)
        .with_note(format!("currents vanish at T_h = T_c omega_h/omega_c = {}", number(t_rev))))
}

fn qar_spec(p: &Params, t_c: f64) -> QarSpec {
    let g = p.get("gamma");
    QarSpec {
        omega_h: p.get("omega_h"),
        omega_c: p.get("omega_c"),
        g: p.get("g"),
        t_h: p.get("t_h"),
        t_c,
        t_w: p.get("t_w"),
        gamma_h: g,
        gamma_c: g,
        gamma_w: g,
    }
}

fn qar(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(p.get("t_c_min"), p.get("t_c_max"), p.count("points"));
    let rows = sweep(&grid, |t_c| {
        let e = ctx("qar", "t_c", t_c);
        let s = qar_spec(p, t_c);
        let r = qar_steady_cooling(&s).map_err(&e)?;
        let predicted = qar_cooling_predicted(&s).map_err(&e)?;
        Ok(vec![t_c, r.j_c, r.j_h, r.j_w, flag(r.cooling), flag(predicted)])
    })?;
    let disagree = rows.iter().filter(|r| r[4] != r[5]).count();
    let mut d = Dataset::new(vec!["t_c", "J_c", "J_h", "J_w", "cooling", "predicted"], rows)
        .with_note(format!("{disagree} grid points where the steady state and the virtual-temperature criterion disagree"));
    if let Some(w) = qar_spec(p, grid[0]).weak_coupling_warning() {
        d = d.with_note(format!("outside the weak-coupling hierarchy: {w}"));
    }
    Ok(d)
}

fn phaseonium(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(0.0, 2.0 * PI, p.count("points"));
    let spec = |phi: f64| PhaseoniumSpec {
        t_h: p.get("t_h"),
        t_c: p.get("t_c"),
        n_th: p.get("n_th"),
        rho_bc_abs: p.get("rho_bc"),
        phi,
    };
    let eta_c = 1.0 - p.get("t_c") / p.get("t_h");
    let rows = sweep(&grid, |phi| {
        let e = ctx("phaseonium", "phi", phi);
        let s = spec(phi);
        Ok(vec![phi, phaseonium_temperature(&s).map_err(&e)?, phaseonium_efficiency(&s).map_err(&e)?, eta_c])
    })?;
    let mut d = Dataset::new(vec!["phi", "T_phi", "eta", "eta_carnot"], rows);
    if spec(0.0).perturbative_warning() {
        d = d.with_note("3 |rho_bc| n_th exceeds 0.1: first-order formulas are unreliable");
    }
    Ok(d)
}

fn squeezed(p: &Params) -> CliResult<Dataset> {
    let (b1, b2) = (p.get("beta1"), p.get("beta2"));
    let grid = linspace(0.0, p.get("r_max"), p.count("points"));
    let rows = sweep(&grid, |r| {
        let e = ctx("squeezed", "r", r);
        let cyc = squeezed_otto_cycle(&SqueezedOttoSpec::adiabatic(p.get("omega1"), p.get("omega2"), b1, b2, r))
            .map_err(&e)?;
        Ok(vec![
            r,
            squeezed_eff_max_power(b1, b2, r).map_err(&e)?,
            generalized_carnot(b1, b2, r).map_err(&e)?,
            cyc.work,
        ])
    })?;
    let eta_c = 1.0 - b2 / b1;
    let crossing = rows.iter().find(|row| row[1] > eta_c).map(|row| row[0]);
    let note = match crossing {
        Some(r) => format!("eta* first exceeds the bare Carnot value {} at r = {}", number(eta_c), number(r)),
        None => format!("eta* stays below the bare Carnot value {} on the grid", number(eta_c)),
    };
    Ok(Dataset::new(vec!["r", "eta_star", "eta_gen_carnot", "W_otto"], rows).with_note(note))
}

fn tpm_otto(p: &Params) -> CliResult<Dataset> {
    let (dc, dh, t_h, t_c, theta) = (p.get("gap_c"), p.get("gap_h"), p.get("t_h"), p.get("t_c"), p.get("theta"));
    let e = |x: qheat::Error| CliError::from_core("tpm-otto", x);
    let h_c = qubit::excitation().scale(dc);
    let h_h = qubit::excitation().scale(dh);
    let u = Operator::new(
        (Operator::identity(2).scale(theta.cos()) + qubit::sigma_x().scale_c(c(0.0, -theta.sin()))).into_matrix(),
    )
    .map_err(e)?;
    let strokes = vec![
        StrokeProtocol::from_unitary(&h_c, &h_h, &u).map_err(e)?,
        StrokeProtocol::thermal(vec![0.0, dh], 1.0 / t_h).map_err(e)?,
        StrokeProtocol::from_unitary(&h_h, &h_c, &u.adjoint()).map_err(e)?,
        StrokeProtocol::thermal(vec![0.0, dc], 1.0 / t_c).map_err(e)?,
    ];
    let joint = cycle_joint_distribution(1.0 / t_c, &strokes).map_err(e)?;
    let w = joint.total_work().map_err(e)?;
    let closed = otto_quasistatic(Medium::Tls, dc, dh, t_h, t_c).map_err(e)?;
    let eta_c = 1.0 - t_c / t_h;
    let rows = w.atoms().iter().map(|&(v, prob)| vec![v, prob]).collect();
    let mut d = Dataset::new(vec!["W_net", "probability"], rows)
        .with_note(format!("mean W = {}, adiabatic closed form W = {}", number(w.mean()), number(closed.work)))
        .with_note(format!("mean Q_h = {}", number(joint.mean(1))));
    match efficiency_distribution(&joint, 1) {
        Ok(eff) => {
            let above: f64 = eff.distribution.atoms().iter().filter(|a| a.0 > eta_c).map(|a| a.1).sum();
            d = d.with_note(format!(
                "P(eta > eta_C) = {} over trajectories with Q_h != 0 (excluded mass {})",
                number(above),
                number(eff.excluded_mass)
            ));
        }
        Err(qheat::Error::Undefined(m)) => d = d.with_note(format!("efficiency distribution undefined: {m}")),
        Err(x) => return Err(e(x)),
    }
    Ok(d)
}

fn tur(p: &Params) -> CliResult<Dataset> {
    let q = p.get("q");
    let grid = linspace(p.get("p_min"), p.get("p_max"), p.count("points"));
    let rows = sweep(&grid, |rate| {
        let e = ctx("tur", "p", rate);
        let (mean, var, sigma) = biased_hopping_statistics(rate, q).map_err(&e)?;
        let chk = tur_check(mean, var, sigma).map_err(&e)?;
        Ok(vec![rate, mean, var, sigma, chk.lhs, chk.rhs])
    })?;
    Ok(Dataset::new(vec!["p", "mean", "variance", "sigma", "tur_lhs", "tur_rhs"], rows))
}

fn zt_curve(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(0.0, p.get("zt_max"), p.count("points"));
    let rows = sweep(&grid, |zt| Ok(vec![zt, max_efficiency_ratio(zt).map_err(ctx("zt-curve", "ZT", zt))?]))?;
    Ok(Dataset::new(vec!["ZT", "eta_ratio"], rows))
}

fn landauer(p: &Params) -> CliResult<Dataset> {
    let e0 = |x| CliError::from_core("landauer", x);
    let l = LeadSpec::from_temperature(p.get("t_l"), p.get("mu_l")).map_err(e0)?;
    let r = LeadSpec::from_temperature(p.get("t_r"), p.get("mu_r")).map_err(e0)?;
    let grid = linspace(p.get("center_min"), p.get("center_max"), p.count("points"));
    let rows = sweep(&grid, |center| {
        let e = ctx("landauer", "center", center);
        let tau = TransmissionFunction::Boxcar { center, width: p.get("width"), tau0: p.get("tau0") }
            .validated()
            .map_err(&e)?;
        let cur = landauer_currents(&tau, &l, &r).map_err(&e)?;
        let eta = if cur.p_gen > 0.0 && cur.j_h_l > 0.0 { cur.p_gen / cur.j_h_l } else { f64::NAN };
        Ok(vec![center, cur.j_e, cur.j_h_l, cur.p_gen, eta])
    })?;
    Ok(Dataset::new(vec!["center", "J_e", "J_hL", "P_gen", "eta"], rows))
}

fn harvester(p: &Params) -> CliResult<Dataset> {
    let grid = logspace(1.0, p.get("r_max"), p.count("points"));
    let rows = sweep(&grid, |ratio| {
        let i = harvester_current(ratio, 1.0, 1.0, ratio, 1.0, 1.0).map_err(ctx("harvester", "R", ratio))?;
        Ok(vec![ratio, i])
    })?;
    Ok(Dataset::new(vec!["R", "I_norm"], rows).with_note("I_norm = I/(e J_g/E_C) with Gamma_L0 = Gamma_R1 = R, Gamma_L1 = Gamma_R0 = 1"))
}

fn sis(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(p.get("v_min"), p.get("v_max"), p.count("points"));
    let rows = sweep(&grid, |v| {
        let c = sis_currents(p.get("delta_l"), p.get("delta_r"), v, p.get("t_l"), p.get("t_r"), p.get("g_t"))
            .map_err(ctx("sis", "V", v))?;
        Ok(vec![v, c.i_l, c.q_l, c.p_gen, flag(c.negative_conductance(v))])
    })?;
    Ok(Dataset::new(vec!["V", "I", "Q_L", "P_gen", "negative_conductance"], rows))
}

fn hp_curve(p: &Params) -> CliResult<Dataset> {
    let t = p.get("t");
    let grid = linspace(0.0, 1.0, p.count("points"));
    let rows = sweep(&grid, |x| {
        let e = ctx("hp-curve", "p", x);
        Ok(vec![x, binary_entropy(x).map_err(&e)?.0, erasure_work(x, t).map_err(&e)?])
    })?;
    Ok(Dataset::new(vec!["p", "H_bits", "W_erasure"], rows))
}

fn steering(p: &Params) -> CliResult<Dataset> {
    let grid = linspace(0.0, p.get("beta_max"), p.count("points"));
    let rows = sweep(&grid, |beta| {
        let b = steering_work_bound(beta).map_err(ctx("steering", "beta", beta))?;
        Ok(vec![beta, b.eta, b.classical_bound, b.optimal, flag(b.quantum_advantage)])
    })?;
    let adv: Vec<f64> = rows.iter().filter(|r| r[4] == 1.0).map(|r| r[0]).collect();
    let note = match (adv.first(), adv.last()) {
        (Some(a), Some(b)) => format!(
            "W_opt exceeds the classical bound at {} of {} grid points, beta in [{}, {}]",
            adv.len(),
            rows.len(),
            number(*a),
            number(*b)
        ),
        _ => "W_opt never exceeds the classical bound on the grid".to_string(),
    };
    Ok(Dataset::new(vec!["beta", "eta", "W_cl_bound", "W_opt", "advantage"], rows).with_note(note))
}

fn measurement_engine(p: &Params) -> CliResult<Dataset> {
    let delta = p.get("delta");
    let grid = linspace(0.0, p.get("g_max"), p.count("points"));
    let rows = sweep(&grid, |g| {
        let m = measurement_engine_energetics(g, delta).map_err(ctx("measurement-engine", "g", g))?;
        Ok(vec![g, m.theta, m.e_m, m.s_m.0, m.work])
    })?;
    Ok(Dataset::new(vec!["g", "theta", "E_m", "S_m_bits", "W"], rows))
}

pub static REGISTRY: &[Experiment] = &[
    Experiment {
        id: "otto-sweep",
        summary: "Quasistatic Otto work of a qubit and an oscillator versus compression",
        params: &[
            real("omega_c", 1.0, "cold-stroke gap"),
            real("t_h", 10.0, "hot temperature"),
            real("t_c", 2.0, "cold temperature"),
            real("omega_h_min", 1.0, "first hot-stroke gap"),
            real("omega_h_max", 5.0, "last hot-stroke gap"),
            points(41.0),
        ],
        run: otto_sweep,
    },
    Experiment {
        id: "carnot",
        summary: "Quasistatic qubit Carnot cycle versus cold temperature",
        params: &[
            real("eps_a", 2.0, "gap at the start of the hot isotherm"),
            real("eps_b", 1.0, "gap at the end of the hot isotherm"),
            real("t_h", 1.0, "hot temperature"),
            real("t_c_min", 0.1, "lowest cold temperature"),
            real("t_c_max", 1.0, "highest cold temperature"),
            points(19.0),
        ],
        run: carnot,
    },
    Experiment {
        id: "maser-sweep",
        summary: "Three-level maser steady currents versus hot temperature",
        params: &[
            real("omega_h", 50.0, "hot transition frequency"),
            real("omega_c", 10.0, "cold transition frequency"),
            real("t_c", 10.0, "cold temperature"),
            real("gamma_h", 1.0, "hot coupling rate"),
            real("gamma_c", 1.0, "cold coupling rate"),
            real("gamma_w", 1.0, "work coupling rate"),
            real("t_h_min", 10.0, "lowest hot temperature"),
            real("t_h_max", 100.0, "highest hot temperature"),
            points(91.0),
        ],
        run: maser_sweep,
    },
    Experiment {
        id: "qar",
        summary: "Three-qubit absorption refrigerator: steady-state cooling vs virtual temperature",
        params: &[
            real("omega_h", 2.0, "hot qubit gap"),
            real("omega_c", 1.0, "cold qubit gap"),
            real("g", 0.05, "three-body coupling"),
            real("t_h", 1.0, "hot bath temperature"),
            real("t_w", 5.0, "work bath temperature"),
            real("gamma", 1e-3, "dissipation rate of every bath"),
            real("t_c_min", 0.3, "lowest cold temperature"),
            real("t_c_max", 1.0, "highest cold temperature"),
            points(50.0),
        ],
        run: qar,
    },
    Experiment {
        id: "phaseonium",
        summary: "Phaseonium engine efficiency versus coherence phase",
        params: &[
            real("t_h", 1.0, "phaseonium temperature"),
            real("t_c", 0.85, "cold temperature"),
            real("n_th", 1e3, "thermal photon number"),
            real("rho_bc", 3e-6, "lower-level coherence |rho_bc|"),
            points(73.0),
        ],
        run: phaseonium,
    },
    Experiment {
        id: "squeezed",
        summary: "Squeezed-bath Otto engine: efficiency at maximum power and its bound",
        params: &[
            real("beta1", 1.0, "cold inverse temperature"),
            real("beta2", 0.2, "hot (squeezed) inverse temperature"),
            real("omega1", 1.0, "cold-stroke frequency"),
            real("omega2", 2.0, "hot-stroke frequency"),
            real("r_max", 3.0, "largest squeezing parameter"),
            points(61.0),
        ],
        run: squeezed,
    },
    Experiment {
        id: "tpm-otto",
        summary: "Two-point-measurement net-work distribution of a qubit Otto cycle",
        params: &[
            real("gap_c", 1.0, "cold-stroke gap"),
            real("gap_h", 3.0, "hot-stroke gap"),
            real("t_h", 10.0, "hot temperature"),
            real("t_c", 2.0, "cold temperature"),
            real("theta", 0.0, "mixing angle of the work strokes (0 is adiabatic)"),
        ],
        run: tpm_otto,
    },
    Experiment {
        id: "tur",
        summary: "Thermodynamic uncertainty relation for biased hopping",
        params: &[
            real("q", 1.0, "backward rate"),
            real("p_min", 1.1, "smallest forward rate"),
            real("p_max", 10.0, "largest forward rate"),
            points(50.0),
        ],
        run: tur,
    },
    Experiment {
        id: "zt-curve",
        summary: "Maximum thermoelectric efficiency ratio versus ZT",
        params: &[real("zt_max", 10.0, "largest ZT"), points(101.0)],
        run: zt_curve,
    },
    Experiment {
        id: "landauer",
        summary: "Landauer currents through a boxcar filter versus its position",
        params: &[
            real("t_l", 2.0, "left (hot) temperature"),
            real("t_r", 1.0, "right temperature"),
            real("mu_l", 0.0, "left chemical potential"),
            real("mu_r", 0.2, "right chemical potential"),
            real("width", 0.3, "boxcar width"),
            real("tau0", 1.0, "boxcar transmission"),
            real("center_min", 0.0, "first boxcar center"),
            real("center_max", 3.0, "last boxcar center"),
            points(31.0),
        ],
        run: landauer,
    },
    Experiment {
        id: "harvester",
        summary: "Coulomb-coupled harvester current versus rate asymmetry",
        params: &[real("r_max", 1e3, "largest asymmetry ratio"), points(31.0)],
        run: harvester,
    },
    Experiment {
        id: "sis",
        summary: "Thermally biased SIS junction quasiparticle current versus voltage",
        params: &[
            real("delta_l", 1.0, "left gap"),
            real("delta_r", 0.5, "right gap"),
            real("t_l", 0.5, "left (hot) temperature"),
            real("t_r", 0.1, "right temperature"),
            real("g_t", 1.0, "tunnel conductance"),
            real("v_min", 0.02, "lowest bias"),
            real("v_max", 0.4, "highest bias"),
            points(39.0),
        ],
        run: sis,
    },
    Experiment {
        id: "hp-curve",
        summary: "Binary entropy and Landauer erasure work",
        params: &[real("t", 1.0, "temperature"), points(101.0)],
        run: hp_curve,
    },
    Experiment {
        id: "steering",
        summary: "Steering bound versus optimal locally extractable work",
        params: &[real("beta_max", 5.0, "largest inverse temperature"), points(51.0)],
        run: steering,
    },
    Experiment {
        id: "measurement-engine",
        summary: "Measurement-fuelled engine energetics versus system-meter coupling",
        params: &[real("delta", 1.0, "detuning"), real("g_max", 5.0, "largest coupling"), points(51.0)],
        run: measurement_engine,
    },
];

pub fn find(id: &str) -> CliResult<&'static Experiment> {
    REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| {
        let ids: Vec<&str> = REGISTRY.iter().map(|e| e.id).collect();
        CliError::Usage(format!("unknown experiment '{id}'; valid: {}", ids.join(", ")))
    })
}
