//! Log records, templates, datasets and their file formats.

mod align;
mod dataset;
mod io;
mod template;

pub use align::{extract_variables, matches};
pub use dataset::{template_frequency_map, Dataset, LogRecord};
pub(crate) use dataset::{frequencies, groups_by_template};
pub use io::{
    dataset_name_from_path, load_raw, load_structured, load_structured_named, read_structured,
    write_dataset, write_structured,
};
pub use template::{canonicalize, Template, WILDCARD};
