//! KNN and Gaussian naive Bayes on a simple train/test split, including the
//! failure naive Bayes hits without a variance floor.
//!
//! cargo run --example classifiers

use kdd_ffr::classifiers::{knn_fit, nb_fit, DEFAULT_EPSILON};
use kdd_ffr::dataset::{apply_minmax, fit_minmax, load_kdd, CategoryMap};

fn main() -> kdd_ffr::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kdd_fixture_1000.csv");
    let data = load_kdd(path.as_ref(), &CategoryMap::default())?;
    let (train_idx, test_idx): (Vec<usize>, Vec<usize>) = (0..data.n_samples()).partition(|i| i % 4 != 0);
    let train = data.subset(&train_idx);
    let test = data.subset(&test_idx);
    let params = fit_minmax(&train.matrix)?;
    let train_x = apply_minmax(&train.matrix, &params)?;
    let test_x = apply_minmax(&test.matrix, &params)?;

    let accuracy = |pred: &[usize]| {
        pred.iter().zip(&test.labels).filter(|(p, t)| p == t).count() as f64 / pred.len() as f64
    };
    for k in [1, 5, 15] {
        let model = knn_fit(&train_x, &train.labels, k)?;
        println!("knn k={k:<2}  accuracy {:.2}%", 100.0 * accuracy(&model.predict_batch(&test_x)?));
    }
    let bayes = nb_fit(&train_x, &train.labels, data.n_categories(), DEFAULT_EPSILON)?;
    println!("bayes eps={DEFAULT_EPSILON:e} accuracy {:.2}%", 100.0 * accuracy(&bayes.predict_batch(&test_x)?));
    println!("class priors: {:?}", bayes.priors.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>());

    let unfloored = nb_fit(&train_x, &train.labels, data.n_categories(), 0.0)?;
    match unfloored.predict_batch(&test_x) {
        Ok(_) => println!("bayes eps=0 ran without trouble"),
        Err(e) => println!("bayes eps=0: {e}"),
    }
    Ok(())
}
