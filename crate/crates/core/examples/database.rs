//! Storing primitive classes as `.iwdb` files and loading them back.

use iwmat::config::EngineConfig;
use iwmat::db::ClassDatabase;
use iwmat::library::Library;

fn main() -> iwmat::Result<()> {
    let dir = std::env::temp_dir().join("iwmat-example-db");
    let lib = Library::build(4, 25, &EngineConfig::default(), true)?;
    lib.save_dir(&dir)?;
    let db = ClassDatabase::load(&ClassDatabase::path_in(&dir, 4, 25))?;
    println!("{}: {} classes", ClassDatabase::file_name(4, 25), db.classes.len());
    for c in &db.classes {
        println!("  {} |Aut| {} cardinality {}", c.name, c.aut.order, c.cardinality);
    }
    let back = Library::load_dir(&dir, 25)?;
    println!("reloaded library complete through size {}", back.primitives.complete_through);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
