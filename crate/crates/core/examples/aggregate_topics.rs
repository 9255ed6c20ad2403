//! Turn per-document topic probabilities into monthly and annual prevalence
//! series, then write one of them out as CSV.
//!
//! Run with `cargo run --example aggregate_topics`.

use tsbreak::series::{aggregate_prevalence, aggregate_topics, read_doc_topics, Frequency};

const RECORDS: &str = "\
doc_id,date,topic_id,probability
a,2021-01-04,methods,0.6
a,2021-01-04,policy,0.3
a,2021-01-04,health,0.1
b,2021-01-19,methods,0.2
b,2021-01-19,policy,0.8
c,2021-02-02,methods,0.5
c,2021-02-02,health,0.5
d,2022-07-11,policy,1.0
e,2022-09-30,methods,0.9
e,2022-09-30,health,0.1
";

fn main() -> tsbreak::Result<()> {
    let records = read_doc_topics(RECORDS.as_bytes())?;
    println!("{} records", records.len());

    // months without documents would be gaps, so a sparse corpus is
    // aggregated annually
    let methods = aggregate_prevalence(&records, "methods", Frequency::Annual)?;
    let rest = aggregate_topics(&records, &["policy", "health"], Frequency::Annual)?;
    for ((period, m), r) in methods
        .timestamps()
        .zip(methods.values())
        .zip(rest.values())
    {
        println!(
            "{period}  methods {m:.3}  policy+health {r:.3}  total {:.3}",
            m + r
        );
    }

    let dense: String = RECORDS.lines().take(8).collect::<Vec<_>>().join("\n");
    let monthly = aggregate_prevalence(
        &read_doc_topics(dense.as_bytes())?,
        "methods",
        Frequency::Monthly,
    )?;
    println!("\nmonthly methods prevalence as CSV:");
    monthly.write_csv(std::io::stdout())?;
    Ok(())
}
