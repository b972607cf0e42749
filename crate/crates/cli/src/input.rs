use std::path::Path;

use tin_core::document::load_network;
use tin_core::fixtures;
use tin_core::model::{Mode, ParallelNetwork};
use tin_core::rational::{frac, render, Rational};

use crate::{Failure, Flags};

pub struct Input {
    pub network: ParallelNetwork,
    pub warnings: Vec<String>,
}

/// The ε a network was built with, if it has the shape of the gap fixture.
fn gap_epsilon(network: &ParallelNetwork) -> Option<Rational> {
    if network.mode() != Mode::Gdof || network.users() != 3 || network.subchannels() != 2 {
        return None;
    }
    let eps = frac(1, 2) - network.channel(1).get(1, 0);
    let candidate = fixtures::gap(&eps).ok()?;
    (candidate == *network).then_some(eps)
}

/// Loads a network document from a path, or a bundled fixture by name.
pub fn load(source: &str, flags: &Flags) -> Result<Input, Failure> {
    let epsilon = flags.epsilon.clone().unwrap_or_else(fixtures::default_epsilon);
    let mut warnings = Vec::new();
    let network = if Path::new(source).exists() {
        let text = std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        let loaded = load_network(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        warnings.extend(loaded.warnings.iter().map(ToString::to_string));
        match (&flags.epsilon, gap_epsilon(&loaded.network)) {
            (Some(requested), Some(found)) if *requested != found => {
                warnings.push(format!(
                    "{source} encodes the gap network at ε={}; rebuilt at ε={}",
                    render(&found),
                    render(requested)
                ));
                fixtures::gap(requested)?
            }
            (Some(_), None) => {
                warnings.push(format!("--epsilon ignored: {source} is not the gap network"));
                loaded.network
            }
            _ => loaded.network,
        }
    } else {
        match fixtures::by_name(source, &epsilon) {
            Some(net) => net?,
            None => {
                return Err(Failure::Input(format!(
                    "{source}: no such file or bundled network (bundled: {})",
                    fixtures::NAMES.join(", ")
                )))
            }
        }
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok(Input { network, warnings })
}
