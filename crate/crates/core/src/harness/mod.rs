//! Problem files, the published presets, seeded instance generation, end-to-end
//! runs and result output.

pub mod emit;
pub mod generate;
pub mod presets;
pub mod run;
pub mod spec;

pub use emit::{emit, render_svg, render_table, write_partitions_csv, write_probabilities_csv};
pub use generate::generate_instance;
pub use presets::Preset;
pub use run::{run, RunResult, MAX_RUN_QUTRITS};
pub use spec::{load_spec, parse_spec, EmitFormat, ProblemSpec, SpecFile};
