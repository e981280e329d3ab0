use std::io::Write;

use anchor_energy::{graph_feature, permutation_test, AnchorFamily, Error, FeatureKind};

use super::emit;
use crate::args::{Feature, Test2Args};
use crate::error::{CliError, CliResult};
use crate::io::load_graph_family;

pub fn run(args: &Test2Args, out: &mut dyn Write) -> CliResult<i32> {
    if args.nperm == 0 {
        return Err(Error::InvalidParams("--nperm must be at least 1".into()).into());
    }
    let kind = match args.feature {
        Feature::Degree => FeatureKind::Degree,
        Feature::Clustering => FeatureKind::Clustering,
    };
    let family = |path: &std::path::Path| -> CliResult<AnchorFamily> {
        let graphs = load_graph_family(path)?;
        if graphs.len() < 2 {
            return Err(CliError::at(
                path,
                Error::InvalidParams(format!("need at least 2 graphs, found {}", graphs.len())),
            ));
        }
        let features = graphs
            .iter()
            .map(|g| graph_feature(g, kind))
            .collect::<anchor_energy::Result<Vec<_>>>()
            .map_err(|e| CliError::at(path, e))?;
        Ok(AnchorFamily::uniform(features)?)
    };
    let f1 = family(&args.dir1)?;
    let f2 = family(&args.dir2)?;
    let report = permutation_test(&f1, &f2, args.nperm, args.alpha, args.seed)?;
    emit(out, &serde_json::to_string(&report)?)?;
    Ok(0)
}
