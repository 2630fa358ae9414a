use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use torq_core::cubical::{boundary_surface, build_complex, CubicalError};
use torq_core::embedding::{
    outer_region_of, q_system, EmbeddingError, SystemEmbedding, DEFAULT_BOX_MARGIN,
};
use torq_core::fixtures::{
    core_of_tube, donut, drilled_cube, rectangle, straight_tunnel, trefoil, tube_with_framing,
    verify_tube_oracle, FixtureError, Framing,
};
use torq_core::mcg::{decompose_tau_u, q_parity, MappingClass, McgError};
use torq_core::moves::{
    builder_double_longitude_twist, builder_double_meridian_twist, builder_lemma_l2,
    builder_reflect_xy, builder_rotate_pi, builder_swap_ml, builder_word_to_moves, q_of, MorseData,
    MoveSequence, MovesError,
};

use crate::format::EmbeddingFile;
use crate::{BuildArgs, CliError, FixtureArgs};

fn bit(b: bool) -> u8 {
    u8::from(b)
}

fn triple(b: [usize; 3]) -> String {
    format!("({},{},{})", b[0], b[1], b[2])
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))
}

fn load(path: &Path, margin: Option<u32>) -> Result<SystemEmbedding, CliError> {
    EmbeddingFile::parse(&read(path)?)?.to_system(margin)
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        let input = matches!(e, EmbeddingError::ComponentCountMismatch { .. });
        CliError {
            name: e.name(),
            message: e.to_string(),
            input,
        }
    }
}

impl From<McgError> for CliError {
    fn from(e: McgError) -> Self {
        let input = matches!(
            e,
            McgError::Parse { .. } | McgError::NotUnimodular { .. } | McgError::UnknownGenerator(_)
        );
        CliError {
            name: e.name(),
            message: e.to_string(),
            input,
        }
    }
}

impl From<MovesError> for CliError {
    fn from(e: MovesError) -> Self {
        CliError::input(e.name(), e.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        let input = matches!(
            e,
            FixtureError::InvalidParameter(_) | FixtureError::InvalidTunnel(_)
        );
        CliError {
            name: e.name(),
            message: e.to_string(),
            input,
        }
    }
}

pub fn q_invariant(
    path: &Path,
    margin: Option<u32>,
    verify_oracle: bool,
) -> Result<String, CliError> {
    let system = load(path, margin)?;
    let result = q_system(&system)?;
    let mut out = String::new();
    for (i, c) in result.components.iter().enumerate() {
        writeln!(
            out,
            "component{i}: c={} n={} Q={} c_bits={} n_bits={}",
            c.c,
            c.n,
            bit(c.q),
            c.c.bit_pair(),
            c.n.bit_pair()
        )
        .unwrap();
    }
    writeln!(out, "total Q={}", bit(result.total)).unwrap();
    if verify_oracle {
        for (i, e) in system.components().iter().enumerate() {
            let Some(core) = core_of_tube(e.solid()) else {
                writeln!(out, "component{i}: oracle skipped (not a one-voxel tube)").unwrap();
                continue;
            };
            let report = verify_tube_oracle(e, &core)?;
            for line in report.to_string().lines() {
                writeln!(out, "component{i}: oracle {line}").unwrap();
            }
            if !report.agrees() {
                return Err(CliError::domain(
                    "OracleMismatch",
                    format!("component {i}: solver and oracle disagree\n{out}"),
                ));
            }
        }
    }
    Ok(out)
}

pub fn predict(f: &Path, g: &Path, margin: Option<u32>) -> Result<String, CliError> {
    let (sf, sg) = (load(f, margin)?, load(g, margin)?);
    if sf.len() != sg.len() {
        return Err(EmbeddingError::ComponentCountMismatch {
            f: sf.len(),
            g: sg.len(),
        }
        .into());
    }
    let (qf, qg) = (q_system(&sf)?.total, q_system(&sg)?.total);
    Ok(format!(
        "hypothesis: valid if f, g regularly homotopic\nQ(f)={} Q(g)={}\nq={}\n",
        bit(qf),
        bit(qg),
        bit(qf ^ qg)
    ))
}

pub fn mcg_check(matrix: &str) -> Result<String, CliError> {
    let m: MappingClass = matrix.parse()?;
    let tau = m.tau();
    Ok(format!(
        "tau={tau}\nreg-homotopic-to-inclusion: {}\n",
        tau.in_h()
    ))
}

pub fn mcg_parity(f: &str, g: &str) -> Result<String, CliError> {
    let (f, g): (MappingClass, MappingClass) = (f.parse()?, g.parse()?);
    Ok(format!("q={}\n", bit(q_parity(&f, &g)?)))
}

pub fn mcg_decompose(matrix: &str) -> Result<String, CliError> {
    let m: MappingClass = matrix.parse()?;
    let word = decompose_tau_u(&m)?;
    let product = word.product()?;
    Ok(format!(
        "word={word}\nlength={}\nproduct={product}\ncheck={}\n",
        word.len(),
        if product == m { "ok" } else { "mismatch" }
    ))
}

fn sequence_report(seq: &MoveSequence) -> String {
    format!(
        "sequence={seq}\nlength={}\nq={}\n",
        seq.len(),
        bit(q_of(seq))
    )
}

pub fn moves_eval(path: &Path) -> Result<String, CliError> {
    let seq = MoveSequence::parse_move_file(&read(path)?)?;
    Ok(sequence_report(&seq))
}

pub fn moves_build(args: &BuildArgs) -> Result<String, CliError> {
    let missing =
        |flag: &str| CliError::input("MissingArgument", format!("{} needs --{flag}", args.name));
    let seq = match args.name.as_str() {
        "double-meridian-twist" => builder_double_meridian_twist(),
        "double-longitude-twist" => builder_double_longitude_twist(),
        "rotate-pi" => builder_rotate_pi(),
        "reflect-xy" => builder_reflect_xy(),
        "swap-ml" => builder_swap_ml(),
        "lemma-l2" => {
            let chi = args.chi.ok_or_else(|| missing("chi"))?;
            let morse = MorseData::new(
                args.min.ok_or_else(|| missing("min"))?,
                args.saddle.ok_or_else(|| missing("saddle"))?,
                args.max.ok_or_else(|| missing("max"))?,
                chi,
            )?;
            builder_lemma_l2(&morse)
        }
        "word" => {
            let word = args
                .word
                .as_deref()
                .ok_or_else(|| missing("word"))?
                .parse()?;
            builder_word_to_moves(&word, args.swap)
        }
        other => {
            return Err(CliError::input(
                "UnknownBuilder",
                format!("no builder named {other:?}"),
            ));
        }
    };
    if let Some(out) = &args.out {
        write(out, &seq.to_move_file())?;
    }
    Ok(sequence_report(&seq))
}

pub fn fixture(args: &FixtureArgs) -> Result<String, CliError> {
    let framing: Framing = args.framing.parse()?;
    let mut e = match args.name.as_str() {
        "donut" => donut(args.outer)?,
        "rectangle-tube" => tube_with_framing(&rectangle(args.width, args.height)?, framing)?,
        "trefoil-tube" => tube_with_framing(&trefoil(), framing)?,
        "drilled-cube" => drilled_cube(args.side, &straight_tunnel(args.side)?)?,
        other => {
            return Err(CliError::input(
                "UnknownFixture",
                format!("no fixture named {other:?}"),
            ));
        }
    };
    if args.swap {
        e = e.remarked(e.l_cycle().clone(), e.m_cycle().clone())?;
    }
    if let Some(margin) = args.box_margin {
        e = e.set_box_margin(margin)?;
    }
    let text = EmbeddingFile::from_system(&SystemEmbedding::single(e)).to_json();
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

pub fn homology(path: &Path, margin: Option<u32>) -> Result<String, CliError> {
    let file = EmbeddingFile::parse(&read(path)?)?;
    let mut out = String::new();
    for (i, (solid, entry)) in file.solids()?.iter().zip(&file.components).enumerate() {
        let fail = |e: CubicalError| CliError::domain(e.name(), format!("components[{i}]: {e}"));
        let complex = build_complex(solid).map_err(fail)?;
        let surface = boundary_surface(solid).map_err(fail)?;
        let margin = margin.or(entry.box_margin).unwrap_or(DEFAULT_BOX_MARGIN);
        let outer = outer_region_of(solid, margin);
        writeln!(
            out,
            "component{i}: solid b={}  surface b={} chi={}  outer b={}",
            triple(complex.betti_numbers()),
            triple(surface.complex().betti_numbers()),
            surface.euler_characteristic(),
            triple(outer.betti_numbers())
        )
        .unwrap();
    }
    Ok(out)
}
