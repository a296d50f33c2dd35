//! Command-line surface: subcommand definitions and dispatch.
//!
//! All data goes to standard output (or `--output`), all diagnostics to
//! standard error; the process exits nonzero on any error so pipelines
//! stay clean.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use tensorfractal_core::analysis::{
    box_count_dimension, connected_components, multisponge_nnz, volume_vanishes,
};
use tensorfractal_core::fractal::{catalog, FractalKind, FractalSpec};
use tensorfractal_core::tt::multisponge_tt;
use tensorfractal_core::DenseTensor;

use crate::netpbm::{write_pbm, write_ppm};
use crate::render::{render_1d_strip, rgb_fractal, rgb_preset, RgbPresetId};
use crate::text::format_tensor;
use crate::voxel::write_voxels;
use crate::{Error, Result};

/// Construct, analyze, and render self-similar fractal grids.
#[derive(Debug, Parser)]
#[command(name = "tensorfractal", version, about)]
pub struct Cli {
    /// Cap on tensor elements per allocation (default 2^28). The
    /// TENSORFRACTAL_BUDGET environment variable sets the same cap; the
    /// flag wins when both are given.
    #[arg(long, global = true, value_name = "ELEMENTS")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Whitespace-delimited 0/1 grid.
    Text,
    /// Portable bitmap (P1, or P4 with --binary); orders 1 and 2.
    Pbm,
    /// Portable pixmap; produced by the `rgb` subcommand only.
    Ppm,
    /// One `x y z` line per occupied cell; order 3.
    Voxels,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in fractals and their fractal dimensions.
    List,
    /// Construct a fractal iterate and write it out.
    Generate {
        /// cantor, sierpinski, menger, cantor_dust, vicsek3d, or
        /// multisponge(d) with d >= 2.
        #[arg(long)]
        fractal: String,
        /// Construction step; step 0 is the unit cell.
        #[arg(short = 'k', long, default_value_t = 1)]
        iterations: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Emit the packed netpbm variant (P4) instead of plain text (P1).
        #[arg(long)]
        binary: bool,
        /// Rows to repeat when rendering an order-1 fractal as a bitmap.
        #[arg(long, default_value_t = 1, value_name = "ROWS")]
        bar_height: usize,
    },
    /// Report counts, dimensions, connectivity, and volumes of an iterate.
    Analyze {
        #[arg(long)]
        fractal: String,
        #[arg(short = 'k', long, default_value_t = 1)]
        iterations: u32,
    },
    /// Render a built-in RGB fractal as PPM.
    Rgb {
        /// Preset a (3x3), b (4x4), or c (5x5).
        #[arg(long)]
        preset: String,
        /// Kronecker power applied to the preset matrices.
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Emit packed P6 instead of plain P3.
        #[arg(long)]
        binary: bool,
    },
    /// Check the multisponge cell-count, volume, and connectivity
    /// theorems over a dimension range.
    Verify {
        /// Inclusive dimension range, e.g. 2..8.
        #[arg(long, default_value = "2..8", value_name = "LO..HI")]
        multisponge_dims: String,
    },
}

/// Dispatches a parsed command; any budget override has been applied.
pub fn run(command: Command) -> Result<()> {
    match command {
        Command::List => list(&mut io::stdout().lock()),
        Command::Generate {
            fractal,
            iterations,
            format,
            output,
            binary,
            bar_height,
        } => {
            let spec = lookup(&fractal)?;
            let t = spec.iterate(iterations)?;
            with_sink(output.as_deref(), |out| {
                write_tensor(&t, format, binary, bar_height, out)
            })
        }
        Command::Analyze {
            fractal,
            iterations,
        } => {
            let spec = lookup(&fractal)?;
            analyze(&spec, iterations, &mut io::stdout().lock())
        }
        Command::Rgb {
            preset,
            depth,
            output,
            binary,
        } => {
            let id: RgbPresetId = preset.parse()?;
            let img = rgb_fractal(&rgb_preset(id), depth)?;
            with_sink(output.as_deref(), |out| write_ppm(&img, out, binary))
        }
        Command::Verify { multisponge_dims } => {
            let (lo, hi) = parse_inclusive_range(&multisponge_dims)?;
            verify(lo, hi, &mut io::stdout().lock())
        }
    }
}

fn lookup(name: &str) -> Result<FractalSpec> {
    let kind: FractalKind = name.parse().map_err(Error::Core)?;
    Ok(catalog(&kind)?)
}

fn with_sink(
    path: Option<&std::path::Path>,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => f(&mut BufWriter::new(File::create(p)?)),
        None => f(&mut io::stdout().lock()),
    }
}

fn write_tensor(
    t: &DenseTensor,
    format: OutputFormat,
    packed: bool,
    bar_height: usize,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        OutputFormat::Text => {
            out.write_all(format_tensor(t).as_bytes())?;
            Ok(())
        }
        OutputFormat::Pbm => match t.order() {
            1 => write_pbm(&render_1d_strip(t, bar_height)?, out, packed),
            2 => write_pbm(t, out, packed),
            order => Err(Error::Format(format!(
                "pbm output needs order 1 or 2, this fractal has order {order}"
            ))),
        },
        OutputFormat::Voxels => write_voxels(t, out),
        OutputFormat::Ppm => Err(Error::Format(
            "ppm output is produced by the rgb subcommand".into(),
        )),
    }
}

fn list(out: &mut dyn Write) -> Result<()> {
    for kind in FractalKind::builtin() {
        let spec = catalog(&kind)?;
        writeln!(out, "{kind} {:.4}", spec.fractal_dimension()?)?;
    }
    writeln!(out, "multisponge(d) ln((d+2)*2^(d-1))/ln(3) for d >= 2")?;
    Ok(())
}

fn analyze(spec: &FractalSpec, iterations: u32, out: &mut dyn Write) -> Result<()> {
    let t = spec.iterate(iterations)?;
    let report = connected_components(&t)?;
    let volumes = spec.volume_sequence(iterations);
    writeln!(out, "fractal: {}", spec.name())?;
    writeln!(out, "base: {}", spec.base())?;
    writeln!(out, "order: {}", spec.order())?;
    writeln!(out, "iterations: {iterations}")?;
    writeln!(out, "nnz: {}", t.count_nonzeros()?)?;
    writeln!(out, "fractal_dimension: {}", spec.fractal_dimension()?)?;
    writeln!(out, "components: {}", report.component_count)?;
    writeln!(out, "connected: {}", report.is_connected)?;
    writeln!(out, "largest_component: {}", report.largest_component_size)?;
    let volume_line: Vec<String> = volumes.values().iter().map(|v| v.to_string()).collect();
    writeln!(out, "volume_sequence: {}", volume_line.join(" "))?;
    if iterations == 0 {
        writeln!(out, "box_count_dimension: n/a")?;
    } else {
        writeln!(
            out,
            "box_count_dimension: {}",
            box_count_dimension(&t, spec.base())?
        )?;
    }
    Ok(())
}

/// Largest dimension whose defining tensor (3^d cells) is materialized for
/// the contraction and connectivity checks; beyond it those checks are
/// reported as skipped and the exact-arithmetic checks still run.
const VERIFY_DENSE_LIMIT: usize = 10;

fn verify(lo: usize, hi: usize, out: &mut dyn Write) -> Result<()> {
    let mut failures = 0usize;
    for d in lo..=hi {
        let formula = multisponge_nnz(d)?;
        let tt = multisponge_tt(d)?;
        let mut count_ok = tt.mode_sums() == formula;
        let connectivity = if d <= VERIFY_DENSE_LIMIT {
            let dense = tt.contract()?;
            count_ok &= u64::try_from(&formula)
                .map(|f| dense.count_nonzeros().map(|c| c == f).unwrap_or(false))
                .unwrap_or(false);
            let report = connected_components(&dense)?;
            if report.is_connected {
                "pass"
            } else {
                "fail"
            }
        } else {
            "skipped"
        };
        // Step volumes vanish iff the kept-cell count stays below 3^d.
        let volume_ok = volume_vanishes(d)?;
        if !count_ok || !volume_ok || connectivity == "fail" {
            failures += 1;
        }
        writeln!(
            out,
            "d={d} cells={formula} count={} volume={} connectivity={connectivity}",
            if count_ok { "pass" } else { "fail" },
            if volume_ok { "pass" } else { "fail" },
        )?;
    }
    if failures > 0 {
        return Err(Error::Format(format!(
            "{failures} dimension(s) failed verification"
        )));
    }
    writeln!(out, "all checks passed for d in {lo}..{hi}")?;
    Ok(())
}

fn parse_inclusive_range(s: &str) -> Result<(usize, usize)> {
    let parsed = s.split_once("..").and_then(|(lo, hi)| {
        let lo: usize = lo.trim().parse().ok()?;
        let hi: usize = hi.trim().parse().ok()?;
        Some((lo, hi))
    });
    match parsed {
        Some((lo, hi)) if lo >= 2 && lo <= hi => Ok((lo, hi)),
        Some((lo, hi)) => Err(Error::Format(format!(
            "range {lo}..{hi} is not a valid dimension range (need 2 <= LO <= HI)"
        ))),
        None => Err(Error::Format(format!(
            "invalid range '{s}', expected LO..HI"
        ))),
    }
}
