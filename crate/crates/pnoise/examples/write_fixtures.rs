//! Writes the catalog modules as module files into the given directory.

use std::path::PathBuf;

use pnoise::write_module;
use pnoise_core::catalog;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let (bar_a, bar_b) = catalog::two_bars();
    let fixtures = [
        ("mono_square", catalog::mono_square()),
        ("staircase", catalog::staircase()),
        ("two_minimizers", catalog::two_minimizers()),
        ("plane_combination", catalog::plane_combination()),
        ("three_generators", catalog::three_generators()),
        ("five_step", catalog::five_step()),
        ("union_of_axes", catalog::union_of_axes()),
        ("bar_a", bar_a),
        ("bar_b", bar_b),
    ];
    for (name, f) in fixtures {
        std::fs::write(dir.join(format!("{name}.pnm")), write_module(&f))?;
    }
    Ok(())
}
