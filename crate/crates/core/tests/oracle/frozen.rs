// Generated by gen_oracles.py with mpmath at 50 digits. Do not edit.

#![allow(clippy::excessive_precision)]

pub const BINARY_ENTROPY_0_11: f64 = 0.4999159581645279956404996;
pub const NOISE_PENALTY_0_5: f64 = 1.377443751081734272180608;
pub const LAMBERT_W_2E_OVER_1E_4: f64 = 8.736031524918470128136366;

/// (x, g(x)) on a log grid over [1e-6, 1e3].
pub const NOISE_PENALTY_TABLE: [(f64, f64); 37] = [
    (1.0e-6, 2.137426433156041749001029e-5),
    (1.778279410038922801225421e-6, 3.653258608069402593768804e-5),
    (3.162277660168379331998894e-6, 6.233893402902053245134241e-5),
    (5.62341325190349080394951e-6, 0.0001061859091933247569690788),
    (1.0e-5, 0.0001805234272877693479440427),
    (
        1.778279410038922801225421e-5,
        0.0003062529027770248537252138,
    ),
    (
        3.162277660168379331998894e-5,
        0.0005183413994639661088313351,
    ),
    (5.62341325190349080394951e-5, 0.0008750554001753508799202635),
    (0.0001, 0.001473047955278608572957038),
    (
        0.0001778279410038922801225421,
        0.002471817923065284937915128,
    ),
    (
        0.0003162277660168379331998894,
        0.004132993008075267094898757,
    ),
    (0.000562341325190349080394951, 0.006882701811471929281913165),
    (0.001, 0.01140920043274247395122487),
    (0.001778279410038922801225421, 0.01881291455149518002553876),
    (0.003162277660168379331998894, 0.03083155568964254445361269),
    (0.00562341325190349080394951, 0.05016693134310590938977445),
    (0.01, 0.08093740780458798880273685),
    (0.01778279410038922801225421, 0.1292599545507494107684516),
    (0.03162277660168379331998894, 0.2039087698700706575381112),
    (0.0562341325190349080394951, 0.3168753907084731386656215),
    (0.1, 0.4834466856136646339489799),
    (0.1778279410038922801225421, 0.7211678272227260111819988),
    (0.3162277660168379331998894, 1.047007694783734444141336),
    (0.562341325190349080394951, 1.472708586794146657052778),
    (1.0, 2.0),
    (1.778279410038922801225421, 2.618887356883550852344046),
    (3.162277660168379331998894, 3.31092904323899642032605),
    (5.62341325190349080394951, 4.055424716450724479623209),
    (10.0, 4.834466856136646339489799),
    (17.78279410038922801225421, 5.634929828449167728729232),
    (31.62277660168379331998894, 6.448161476725395654137183),
    (56.2341325190349080394951, 7.268821413611271687512865),
    (100.0, 8.093740780458798880273685),
    (177.8279410038922801225421, 8.921082107228152161391863),
    (316.2277660168379331998894, 9.7497939785593908462725),
    (562.341325190349080394951, 10.5792792995806012511009),
    (1000.0, 11.40920043274247395122487),
];

/// (x, W0(x)) reference points.
pub const LAMBERT_W_TABLE: [(f64, f64); 29] = [
    (0.001, 0.0009990014973385308899578279),
    (0.003162277660168379331998894, 0.003152324829302908106513263),
    (0.01, 0.009901473843595011885336327),
    (0.03162277660168379331998894, 0.03066769869153544458797251),
    (0.1, 0.09127652716086226429989572),
    (0.3162277660168379331998894, 0.2470147363402485497596111),
    (1.0, 0.5671432904097838729999687),
    (3.162277660168379331998894, 1.077058672287783829181593),
    (10.0, 1.745528002740699383074301),
    (31.62277660168379331998894, 2.526888812038001069604196),
    (100.0, 3.385630140290050184888244),
    (316.2277660168379331998894, 4.298253869189773234664551),
    (1000.0, 5.249602852401596227126056),
    (3162.277660168379331998894, 6.229716930266416839599251),
    (10000.0, 7.231846038093372706475619),
    (31622.77660168379331998894, 8.251266245590168380149639),
    (1.0e+5, 9.284571428622108983205132),
    (3.162277660168379331998894e+5, 10.32923936467019997088677),
    (1.0e+6, 11.38335808614005262200016),
    (3.162277660168379331998894e+6, 12.44544815818636044709531),
    (1.0e+7, 13.51434401030609120900672),
    (3.162277660168379331998894e+7, 14.58911265545073225908225),
    (1.0e+8, 15.66899671545096218719628),
    (3.162277660168379331998894e+8, 16.75337364105273366931508),
    (1.0e+9, 17.8417259674214691825406),
    (3.162277660168379331998894e+9, 18.93361924550355103517822),
    (1.0e+10, 20.02868541330495078123431),
    (-0.3678784411714423215955238, -0.9976701662720078891802335),
    (-0.2, -0.259171101819073745056652),
];
