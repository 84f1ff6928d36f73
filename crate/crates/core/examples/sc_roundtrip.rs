use polar_ga::channel::{transmit, ChannelModel, RngStream};
use polar_ga::codec::{encode, Decoder, DecoderConfig};
use polar_ga::construction::{construct_code, ConstructionMethod};
use polar_ga::ga::{ebn0_to_noise_variance, GaScheme};

fn main() -> polar_ga::Result<()> {
    let (n, k) = (10, 341);
    let sigma2 = ebn0_to_noise_variance(2.0, k as f64 / 1024.0)?;
    let c = construct_code(&ConstructionMethod::Ga(GaScheme::aga4()), n, k, sigma2)?;
    println!("SC bound {:?}", c.sc_bound());

    let info = vec![1u8; k];
    let x = encode(&c.code, &info)?;
    let channel = ChannelModel::awgn(sigma2)?;
    let mut decoder = Decoder::new(&c.code, DecoderConfig::sc())?;
    let mut errors = 0;
    for trial in 0..1000 {
        let llrs = transmit(&channel, &x, &mut RngStream::new(7, trial).rng());
        errors += usize::from(decoder.decode(&llrs)? != info);
    }
    println!("{errors} block errors in 1000 trials");
    Ok(())
}
