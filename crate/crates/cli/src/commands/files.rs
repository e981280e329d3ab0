use std::io::Write;

use anchor_energy::graphs::{read_edge_list, write_edge_list};
use anchor_energy::{ba_generate, er_generate, geodesic_cost};

use super::emit;
use crate::args::{ConvertArgs, GenArgs, GeodesicArgs, Model};
use crate::error::{CliError, CliResult};
use crate::io::{read_matrix, write_matrix};

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<i32> {
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let make = |seed: u64| match args.model {
        Model::Ba => ba_generate(args.n, args.m, seed),
        Model::Er => er_generate(args.n, args.p_edge, seed),
    };
    let prefix = match args.model {
        Model::Ba => "ba",
        Model::Er => "er",
    };
    match (&args.out, args.count) {
        (None, 1) => emit(out, write_edge_list(&make(args.seed)?).trim_end())?,
        (None, _) => return Err(CliError::Usage("--count > 1 needs --out DIR".into())),
        (Some(path), 1) => std::fs::write(path, write_edge_list(&make(args.seed)?))
            .map_err(|e| CliError::io(path, e))?,
        (Some(dir), count) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            for k in 0..count {
                let g = make(args.seed.wrapping_add(k as u64))?;
                let path = dir.join(format!("{prefix}_{k:04}.edges"));
                std::fs::write(&path, write_edge_list(&g)).map_err(|e| CliError::io(&path, e))?;
            }
        }
    }
    Ok(0)
}

pub fn geodesic(args: &GeodesicArgs) -> CliResult<i32> {
    let g = read_edge_list(&args.graph)?;
    let c = geodesic_cost(&g).map_err(|e| CliError::at(&args.graph, e))?;
    write_matrix(&args.out, &c)?;
    Ok(0)
}

pub fn convert(args: &ConvertArgs) -> CliResult<i32> {
    write_matrix(&args.output, &read_matrix(&args.input)?)?;
    Ok(0)
}
