#![allow(dead_code)]

use std::sync::OnceLock;

use ulam_words::UlamTable;

pub const PUBLISHED_COUNTS: [(u32, u64); 12] = [
    (13, 1916),
    (14, 3812),
    (15, 7772),
    (16, 14822),
    (17, 29368),
    (18, 58478),
    (19, 114300),
    (20, 225166),
    (21, 441724),
    (22, 876238),
    (23, 1717748),
    (24, 3406884),
];

pub fn table24() -> &'static UlamTable {
    static TABLE: OnceLock<UlamTable> = OnceLock::new();
    TABLE.get_or_init(|| UlamTable::build(24).expect("build levels 1..=24"))
}
