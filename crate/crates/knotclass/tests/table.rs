use knotclass::table::{load_table, parse_table, save_table, to_table_string, TableError};
use knotclass_core::{classify, ClassifyConfig};

#[test]
fn files_round_trip_byte_for_byte() {
    let rep = classify(6, &ClassifyConfig::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    save_table(&rep, &a).unwrap();
    let back = load_table(&a).unwrap();
    assert_eq!(back, rep);
    save_table(&back, &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn malformed_tables_are_rejected() {
    let text = to_table_string(&classify(3, &ClassifyConfig::default()).unwrap());
    for bad in [
        text.trim_end().to_string(),
        text.replace("\nT\t", "\nT\t9,"),
        text.replacen("B\t", "X\t", 1),
        text.replacen('\n', " \n", 1),
        format!("{text}T\t1\n"),
        String::new(),
    ] {
        assert!(matches!(parse_table(&bad), Err(TableError::Malformed { .. })), "{bad:?}");
    }
    let missing = tempfile::tempdir().unwrap().path().join("none");
    assert!(matches!(load_table(&missing), Err(TableError::Io(_))));
}
