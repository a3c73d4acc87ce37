use ncpara::formats::{parse_gold_file, parse_system_output, write_gold_file, write_system_output};
use ncpara_core::baseline::naive_baseline;
use ncpara_core::gold::compile_gold;
use ncpara_core::{AnnotationRecord, Compound, RawParaphrase};
use proptest::prelude::*;

const LINKS: [&str; 7] = ["of", "for the", "in", "that cleans", "Used For", "made of", "from"];
const COMPOUNDS: [(&str, &str); 3] = [("air", "filter"), ("olive", "oil"), ("work", "area")];

proptest! {
    #[test]
    fn compiled_gold_survives_write_and_parse(items in prop::collection::vec((0usize..3, 0usize..7), 1..40)) {
        let records: Vec<AnnotationRecord> = items
            .iter()
            .map(|&(c, l)| {
                let (m, h) = COMPOUNDS[c];
                AnnotationRecord {
                    compound: Compound::new(m, h).unwrap(),
                    paraphrase: RawParaphrase::new(format!("{h} {} {m}.", LINKS[l])).unwrap(),
                    annotator: None,
                }
            })
            .collect();
        let gold = compile_gold(&records).unwrap().lists;
        let mut buf = Vec::new();
        write_gold_file(&mut buf, &gold).unwrap();
        prop_assert_eq!(parse_gold_file(buf.as_slice()).unwrap(), gold);
    }
}

#[test]
fn baseline_output_parses_back_in_order() {
    let items: Vec<_> = COMPOUNDS
        .iter()
        .map(|&(m, h)| {
            let c = Compound::new(m, h).unwrap();
            let ps = naive_baseline(&c);
            (c, ps)
        })
        .collect();
    let mut buf = Vec::new();
    write_system_output(&mut buf, &items).unwrap();
    let sub = parse_system_output(buf.as_slice()).unwrap();
    assert_eq!(sub.items(), items.as_slice());
}
