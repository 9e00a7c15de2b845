//! Frozen fixtures and expected values for unit tests.
//!
//! Every array and scalar here was computed by an independent reference
//! implementation of the same formulas (dense linear algebra in a separate
//! numerical environment) and pasted in at full double precision. Tests
//! compare this crate's estimators against these numbers; nothing in this
//! file is produced by the code under test.

#![allow(clippy::excessive_precision)]

// length 2
pub(crate) const OLS6_COEF: [f64; 2] = [0.80952380952380876, 0.94285714285714339];
// 2 x 2 row-major
pub(crate) const OLS6_XTX_INV: [f64; 4] = [3.1428571428571432, -0.85714285714285732, -0.85714285714285721, 0.34285714285714292];
// 2 x 2 row-major
pub(crate) const OLS6_HC0: [f64; 4] = [0.33860706187236861, -0.091179786200194429, -0.091179786200194415, 0.0527984450923226];
// 2 x 2 row-major
pub(crate) const OLS6_CLASSICAL: [f64; 4] = [0.66848072562358285, -0.18231292517006806, -0.18231292517006806, 0.072925170068027234];

// length 12
pub(crate) const PROBIT12_X: [f64; 12] = [-2.0, -1.5, -1.0, -0.59999999999999998, -0.20000000000000001, 0.10000000000000001, 0.29999999999999999, 0.69999999999999996, 1.1000000000000001, 1.6000000000000001, 2.0, 2.5];
// length 12
pub(crate) const PROBIT12_Y: [f64; 12] = [0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0];
// length 2
pub(crate) const PROBIT12_COEF: [f64; 2] = [0.16732776633428792, 0.98541468679903377];
// 2 x 2 row-major
pub(crate) const PROBIT12_COV: [f64; 4] = [0.217320431366374, 0.029864669728731332, 0.029864669728731339, 0.262869711822386];

// 80 x 3 row-major
pub(crate) const RF80_Z: [f64; 240] = [-0.50360000000000005, 1.1588000000000001, 0.4002, 0.75149999999999995, -0.39329999999999998, -0.49840000000000001, 0.63139999999999996, 0.59809999999999997, -0.22409999999999999, -1.0510999999999999, -0.0124, 1.6198999999999999, -1.2532000000000001, -0.66720000000000002, 0.096199999999999994, 2.7482000000000002, -1.0658000000000001, 1.2225999999999999, 1.4666999999999999, -0.49359999999999998, -0.27800000000000002, 0.0053, 0.90539999999999998, -1.8383, -1.7999000000000001, 1.1099000000000001, 0.56320000000000003, -0.088900000000000007, -0.33460000000000001, 0.1055, -0.27650000000000002, 0.75039999999999996, -0.43120000000000003, -1.298, 1.3865000000000001, 0.61070000000000002, -0.93189999999999995, 1.4986999999999999, -1.2850999999999999, -0.45879999999999999, -1.3822000000000001, 0.45989999999999998, -0.97540000000000004, 0.3382, -2.2006000000000001, 0.18990000000000001, -0.98140000000000005, 0.32850000000000001, 0.24970000000000001, 0.18759999999999999, 0.35060000000000002, 0.87470000000000003, -0.0092999999999999992, -0.97340000000000004, 0.0591, -0.57130000000000003, 0.0436, -0.1353, 2.2947000000000002, -1.2649999999999999, -0.33379999999999999, -0.94430000000000003, -0.30809999999999998, -0.51780000000000004, 0.39789999999999998, 0.79749999999999999, 0.15670000000000001, 0.031800000000000002, 0.24279999999999999, -0.1671, 0.33189999999999997, 0.17030000000000001, -0.1026, 0.48449999999999999, 1.2808999999999999, -0.033500000000000002, -1.272, 0.38540000000000002, -1.4089, -0.25640000000000002, -1.6585000000000001, 0.17430000000000001, -0.64410000000000001, -0.16300000000000001, -0.70940000000000003, 0.2054, -0.046899999999999997, 1.24, 0.56620000000000004, -1.3815, 0.72809999999999997, -2.1776, 0.56079999999999997, -0.84130000000000005, -0.1222, -0.49540000000000001, -0.50319999999999998, 1.4638, -0.72619999999999996, 0.027300000000000001, 0.49959999999999999, -1.2437, 2.8127, 1.2082999999999999, -1.9114, -1.1970000000000001, -1.7215, -0.73429999999999995, -2.2433000000000001, -0.18129999999999999, 1.3200000000000001, -1.0803, 0.25519999999999998, 0.63319999999999999, 1.0961000000000001, 0.31459999999999999, 0.54530000000000001, -0.49980000000000002, -1.5550999999999999, 1.1246, 0.37359999999999999, 2.0118, 0.71809999999999996, -0.97850000000000004, 0.92449999999999999, -2.0876999999999999, 0.88070000000000004, -1.04, 0.58320000000000005, -1.4778, -0.378, 0.56969999999999998, -0.44790000000000002, -0.28239999999999998, 2.0825, 1.1205000000000001, -0.28510000000000002, -1.0193000000000001, 0.39069999999999999, -0.39279999999999998, 2.2905000000000002, 0.1966, 0.0129, 1.1728000000000001, 1.3835999999999999, -1.5239, 0.2621, -0.13700000000000001, -1.7571000000000001, 0.93969999999999998, -1.8245, -0.83899999999999997, -0.90590000000000004, -0.1414, -0.098100000000000007, 1.0026999999999999, 1.1089, 0.23419999999999999, -0.42609999999999998, -0.63500000000000001, -0.54559999999999997, -0.55359999999999998, 0.15989999999999999, 0.93820000000000003, -1.1583000000000001, -0.21560000000000001, -1.5563, -0.073599999999999999, -1.0204, -0.1724, 2.0642, 1.2383, 0.57650000000000001, 0.9425, 0.058599999999999999, 0.22159999999999999, 0.040800000000000003, 0.41239999999999999, -0.37969999999999998, 0.12479999999999999, 0.029700000000000001, 0.43590000000000001, -0.61860000000000004, 0.82850000000000001, -1.4005000000000001, -0.55620000000000003, 0.61119999999999997, 0.51380000000000003, 0.34910000000000002, -0.4919, 0.86809999999999998, -1.5262, -0.22620000000000001, -0.37119999999999997, 2.0764, 1.3982000000000001, -1.71, -0.70509999999999995, -2.0371000000000001, 1.0016, 0.78169999999999995, 1.1084000000000001, -2.1444999999999999, 0.064500000000000002, 0.5071, 0.81699999999999995, 0.4244, -0.82440000000000002, 0.3392, -0.84409999999999996, 0.28620000000000001, -0.057500000000000002, 0.56489999999999996, 1.0616000000000001, -0.16289999999999999, 0.66110000000000002, 0.76529999999999998, -0.58260000000000001, -0.26869999999999999, 1.2581, -0.1973, 0.58789999999999998, -0.0458, 0.71260000000000001, 0.025600000000000001, 0.45100000000000001, 0.30009999999999998, 0.18190000000000001, -0.23769999999999999, 1.2894000000000001, -0.050200000000000002, -0.25619999999999998, -0.19989999999999999, -1.3106, -0.80249999999999999, -2.0312000000000001, 1.1950000000000001, 1.9906999999999999, -0.4501, -0.58630000000000004];
// 80 x 1 row-major
pub(crate) const RF80_X: [f64; 80] = [-1.5308999999999999, -0.0103, -0.26550000000000001, -0.67859999999999998, 0.8004, 0.75890000000000002, 1.0256000000000001, -1.0951, -0.82620000000000005, -1.1292, -0.35659999999999997, 0.93259999999999998, -0.77080000000000004, 0.18940000000000001, 0.34399999999999997, -0.49980000000000002, 0.13639999999999999, -0.70050000000000001, -0.27000000000000002, 0.89159999999999995, 0.77259999999999995, 0.47520000000000001, -1.1694, -0.34570000000000001, 0.44259999999999999, -0.48380000000000001, 0.027, -0.26190000000000002, -0.99929999999999997, 1.0033000000000001, -0.95489999999999997, 1.8514999999999999, 0.79590000000000005, 0.91690000000000005, -0.12820000000000001, -0.72819999999999996, 0.64239999999999997, 0.14380000000000001, -1.9799, -0.063399999999999998, 1.6004, -1.0118, -0.4158, 0.78059999999999996, -1.3002, -0.017000000000000001, 1.244, 1.331, 0.2185, -0.15909999999999999, 0.25879999999999997, -1.3608, -1.0419, 0.6179, 1.3118000000000001, 0.105, -1.1296999999999999, -0.52429999999999999, -0.76090000000000002, 1.5636000000000001, -0.45540000000000003, -1.5780000000000001, 1.1895, -0.2969, -1.2878000000000001, 0.2278, -0.55940000000000001, 2.0379999999999998, 1.4585999999999999, 1.6396999999999999, -0.22209999999999999, 0.2913, 0.1077, 0.65410000000000001, 0.42080000000000001, 0.81699999999999995, -0.41399999999999998, 0.38769999999999999, -0.40639999999999998, 0.443];
// length 80
pub(crate) const RF80_D: [f64; 80] = [0.39979999999999999, 1.4288000000000001, 0.2198, -0.32840000000000003, 0.23419999999999999, 1.7706, 1.2941, 0.75229999999999997, 0.33560000000000001, 0.82520000000000004, -1.2317, 0.78290000000000004, 0.19570000000000001, -1.8077000000000001, -1.3796999999999999, -0.1245, 1.4528000000000001, 0.1011, -1.8017000000000001, 2.9946000000000002, -1.5803, 0.624, 1.0138, 1.0525, 2.3456000000000001, 0.21060000000000001, -2.8113000000000001, -0.1583, 0.43940000000000001, 1.7122999999999999, -0.61950000000000005, -1.0308999999999999, -0.0901, 1.0721000000000001, 3.8197999999999999, -3.7176999999999998, -1.8323, -0.1454, 1.5210999999999999, -2.5085000000000002, 3.8155000000000001, 0.68959999999999999, 0.34339999999999998, 0.33200000000000002, -0.097500000000000003, -1.0694999999999999, 3.0272999999999999, 1.53, 2.0552000000000001, -0.122, -3.0520999999999998, 1.0834999999999999, 2.5627, -0.18279999999999999, 3.6244000000000001, -1.9302999999999999, 0.69840000000000002, 5.0412999999999997, -0.54969999999999997, 0.88580000000000003, -0.50249999999999995, -1.9256, 2.7778, -0.79100000000000004, 1.4659, 0.6633, 0.59389999999999998, 0.78400000000000003, 4.0519999999999996, 0.2833, 1.9222999999999999, 1.9246000000000001, 0.54120000000000001, 2.7121, 1.153, 1.0195000000000001, 1.4396, -1.6512, -0.7974, 1.8599000000000001];
// length 80
pub(crate) const RF80_Y: [f64; 80] = [-1.1100000000000001, 0.24310000000000001, -2.6619000000000002, 0.66169999999999995, 2.0889000000000002, 1.3874, 0.2913, 0.8296, -0.27079999999999999, 0.39929999999999999, -2.4914000000000001, 0.54920000000000002, -0.26979999999999998, -1.8354999999999999, -3.3565999999999998, -0.57799999999999996, 2.2067000000000001, -2.1396999999999999, -2.7764000000000002, 2.181, -1.4347000000000001, 1.1654, 0.70079999999999998, 1.0777000000000001, 3.4409999999999998, 1.2430000000000001, -3.5173999999999999, -0.94099999999999995, -0.2175, -0.97570000000000001, 0.050700000000000002, -2.2557, -1.216, -0.2452, 0.63949999999999996, -3.9702999999999999, -2.1324000000000001, -0.20230000000000001, 1.4646999999999999, -2.8788, 3.5627, 0.4088, -0.67879999999999996, 1.7701, 2.2201, -2.5396000000000001, 4.8098999999999998, 3.0003000000000002, 1.131, 1.0105999999999999, -4.3468, 1.6496999999999999, 3.3016000000000001, -0.92779999999999996, 3.7212999999999998, -3.0095000000000001, 0.96060000000000001, 5.8342999999999998, -0.86819999999999997, 0.55500000000000005, -1.4772000000000001, -3.5684, 2.4537, -2.0110999999999999, 0.98899999999999999, 0.873, 0.40720000000000001, -0.30509999999999998, 3.9965999999999999, 0.30170000000000002, 1.5099, 2.5177999999999998, -1.7235, 2.3864999999999998, 0.126, 0.20169999999999999, 1.0248999999999999, -3.7715999999999998, -0.85960000000000003, 0.82069999999999999];
// length 3
pub(crate) const RF80_GAMMA_HAT: [f64; 3] = [1.0709869727541381, 1.0971681325032394, 0.66861429222110247];
// length 3
pub(crate) const RF80_GAMMA_CAP_HAT: [f64; 3] = [0.84993741340468565, 1.0496429541186647, 1.2818111749080414];
// 3 x 3 row-major
pub(crate) const RF80_V_GAMMA: [f64; 9] = [0.91334456788761642, 0.1402268989795627, 0.23810758891513542, 0.14022689897956278, 0.85381980563698123, 0.054576083576354011, 0.23810758891513537, 0.054576083576353893, 0.83725717879661032];
// 3 x 3 row-major
pub(crate) const RF80_V_GAMMA_CAP: [f64; 9] = [2.4025979406643851, 0.62019741664244932, 0.35161210375613022, 0.62019741664244932, 2.1906638781662546, 0.096846332471739183, 0.35161210375613011, 0.096846332471738808, 2.3107773485019831];
// 3 x 3 row-major
pub(crate) const RF80_C: [f64; 9] = [1.2862152350760157, 0.28321507235206189, 0.32455772295521695, 0.283215072352062, 1.1854600599213858, 0.034484453224865257, 0.3245577229552169, 0.034484453224865173, 1.1321175567163331];
// 5 x 5 row-major
pub(crate) const RF80_SIGMA_W: [f64; 25] = [0.97352670000000019, -0.13734657275000001, -0.071676013875, 0.075398352749999981, 0.0077625000000000003, -0.13734657275000001, 0.92079713600000024, -0.23436689775000005, 0.039821621625000025, -0.076985000000000026, -0.071676013875, -0.23436689775000005, 0.97150200924999974, -0.073974140124999976, 0.027677500000000004, 0.075398352749999981, 0.039821621625000025, -0.073974140124999976, 0.79553040274999987, 0.033340000000000002, 0.0077625000000000003, -0.076985000000000026, 0.027677500000000004, 0.033340000000000002, 1.0];

// 30 x 2 row-major
pub(crate) const CF30_Z: [f64; 60] = [0.0011999999999999999, 0.29870000000000002, -0.27410000000000001, -0.89059999999999995, -0.45469999999999999, -0.99160000000000004, 0.060100000000000001, 1.3402000000000001, -0.49220000000000003, -0.62050000000000005, 0.48980000000000001, 0.3569, 0.10539999999999999, -0.93049999999999999, -0.0293, 0.69530000000000003, -1.3442000000000001, -0.45760000000000001, -1.9012, -1.2895000000000001, -1.8416999999999999, -0.2351, -1.2674000000000001, 0.27129999999999999, 0.15679999999999999, -0.18690000000000001, -2.5167999999999999, -0.53869999999999996, -0.048500000000000001, 0.1133, -1.5301, -0.4778, -0.97850000000000004, -0.80879999999999996, 1.0609, -0.8075, -0.032500000000000001, 0.88439999999999996, -0.58360000000000001, -0.11169999999999999, 0.1105, 0.063799999999999996, -1.2251000000000001, 0.076100000000000001, 1.3588, -1.5470999999999999, 0.85940000000000005, 0.11940000000000001, -0.64149999999999996, 2.0004, 0.76229999999999998, -1.1993, 0.074499999999999997, 0.57669999999999999, -0.1888, 0.68289999999999995, -0.066500000000000004, 0.66720000000000002, 1.4384999999999999, -0.67569999999999997];
// 30 x 1 row-major
pub(crate) const CF30_X: [f64; 30] = [0.2031, -0.46329999999999999, 0.1273, -1.1872, -0.57930000000000004, -0.19620000000000001, 0.89880000000000004, 1.1452, -1.3234999999999999, -0.79459999999999997, 0.64690000000000003, -1.9923999999999999, -0.4632, -0.097299999999999998, 1.2569999999999999, 0.68940000000000001, -0.32719999999999999, -0.36859999999999998, -0.25019999999999998, 1.5235000000000001, -0.42799999999999999, -0.30370000000000003, 0.35260000000000002, -0.1208, -0.1973, -1.1141000000000001, -0.0115, -0.44359999999999999, 1.1660999999999999, 0.65310000000000001];
// length 30
pub(crate) const CF30_D: [f64; 30] = [0.67689999999999995, -0.057200000000000001, -1.1496999999999999, 2.2282000000000002, -0.76780000000000004, 1.6998, -1.2603, 1.6172, -3.3955000000000002, -4.8064999999999998, -1.7402, -2.1480000000000001, 0.43240000000000001, -0.3322, -0.012500000000000001, -1.9295, -1.1183000000000001, 1.1973, 0.8236, -0.0218, 1.1355999999999999, -0.33539999999999998, -0.40679999999999999, 1.2395, 1.3349, -1.1859, 1.1921999999999999, -0.23350000000000001, 2.1892, 1.6866000000000001];
// length 30
pub(crate) const CF30_Y: [f64; 30] = [0.69589999999999996, 0.20530000000000001, -0.43559999999999999, 1.4402999999999999, -0.8387, 2.0142000000000002, -1.8902000000000001, 2.4104000000000001, -2.2202000000000002, -0.022599999999999999, -0.65769999999999995, -1.0201, 0.48559999999999998, 0.82420000000000004, 0.61319999999999997, 0.28460000000000002, -0.1588, 1.1113, 0.43509999999999999, 0.014500000000000001, 1.8738999999999999, 0.050599999999999999, -0.622, 0.56189999999999996, 0.78720000000000001, -1.8932, 1.8163, -0.71930000000000005, 3.5266999999999999, 1.8075000000000001];

// length 5
pub(crate) const CF30_COEF: [f64; 5] = [-0.024856798883510983, 0.72421801228722693, 0.18384443333729938, 0.4459903385770852, 0.46845104901948403];
// length 5
pub(crate) const CF30_COV_DIAG: [f64; 5] = [0.016432170382041835, 0.0071177144820620047, 0.00090436095067816986, 0.019757511336585858, 0.026972709456527799];

// length 4
pub(crate) const CF30_TSLS_COEF: [f64; 4] = [-0.012259553125149474, 0.71829039143753826, 0.17871369763827546, 0.44123507995204014];
// length 4
pub(crate) const CF30_TSLS_COV_DIAG: [f64; 4] = [0.096227414922008245, 0.026124562299396581, 0.013440302931721564, 0.037829649691149929];

// 60 x 3 row-major
pub(crate) const PCF60_Z: [f64; 180] = [0.082500000000000004, -0.46439999999999998, 0.050500000000000003, 0.68620000000000003, -1.7567999999999999, 1.6843999999999999, -0.45779999999999998, -0.59640000000000004, -1.0469999999999999, 0.93179999999999996, 0.67500000000000004, 1.2444, 0.8931, 0.26300000000000001, 0.32850000000000001, 0.93520000000000003, -0.87760000000000005, -0.045900000000000003, 0.38190000000000002, -0.45250000000000001, 0.72170000000000001, -0.35220000000000001, 0.67279999999999995, 0.1406, 0.46260000000000001, -1.5177, -0.86029999999999995, 1.3446, 0.17810000000000001, -0.081299999999999997, 0.9637, 0.75090000000000001, -0.046800000000000001, -0.6431, 1.9609000000000001, 0.69069999999999998, -1.5721000000000001, 0.83950000000000002, 0.76849999999999996, 0.81389999999999996, -0.40389999999999998, 1.4713000000000001, -0.748, 1.2111000000000001, 0.29260000000000003, 1.6973, -0.3886, 0.69640000000000002, 0.8448, -0.32379999999999998, 0.011299999999999999, -0.41460000000000002, 0.47820000000000001, 0.6885, -0.29170000000000001, 0.34589999999999999, -0.58189999999999997, -0.52110000000000001, -1.9226000000000001, -1.1739999999999999, -0.67390000000000005, 0.1082, 1.5203, 0.26900000000000002, 0.091399999999999995, 0.34789999999999999, -1.4015, 0.048399999999999999, -0.86809999999999998, -0.57369999999999999, 2.0363000000000002, 1.8473999999999999, 0.97719999999999996, 0.54300000000000004, 0.50360000000000005, -0.96509999999999996, -1.2555000000000001, 0.3347, -0.44719999999999999, -0.77669999999999995, -0.080299999999999996, -0.072499999999999995, 0.18920000000000001, -0.73960000000000004, 0.017299999999999999, -1.2393000000000001, 1.2267999999999999, 1.5192000000000001, -1.1044, 0.42730000000000001, -0.221, 0.1137, 0.062899999999999998, 1.1931, 0.55330000000000001, -0.86850000000000005, 0.080199999999999994, -0.017600000000000001, -0.79820000000000002, 0.20430000000000001, -0.022800000000000001, 1.3593, -0.18790000000000001, 0.441, -2.2479, -1.6776, 0.32719999999999999, 0.129, 0.90880000000000005, -1.1521999999999999, -0.2848, -2.4923999999999999, -0.83660000000000001, -0.43330000000000002, -0.0969, -0.55479999999999996, 0.95409999999999995, -1.4478, -1.2830999999999999, 0.46039999999999998, -0.37909999999999999, 1.3366, 0.68910000000000005, 0.3327, -1.7141, -0.61760000000000004, 0.26800000000000002, -0.64380000000000004, 0.28210000000000002, 0.29930000000000001, -0.83130000000000004, -1.1136999999999999, 0.96750000000000003, 0.048300000000000003, 0.055, 0.96140000000000003, 1.7332000000000001, -2.8094000000000001, 1.4545999999999999, 0.99819999999999998, -0.29580000000000001, 1.1796, -0.083500000000000005, 1.5971, 1.1393, 0.41249999999999998, -0.62250000000000005, 0.087400000000000005, -0.87549999999999994, -0.70199999999999996, 0.17979999999999999, -0.12809999999999999, -0.66720000000000002, 1.6491, -0.55330000000000001, -0.029000000000000001, -0.0025000000000000001, -2.1905999999999999, 2.6164000000000001, -0.57599999999999996, 0.73839999999999995, -2.1505000000000001, -0.1678, -1.6388, -0.50770000000000004, 1.2655000000000001, 0.78120000000000001, 0.62, 0.50070000000000003, -1.7551000000000001, -1.1395, 0.54600000000000004, 1.3594999999999999, 0.4546, 0.56910000000000005, 0.54510000000000003, 0.69850000000000001, 0.48089999999999999, -1.1052999999999999, 0.9728];
// 60 x 1 row-major
pub(crate) const PCF60_X: [f64; 60] = [-0.90180000000000005, -1.4691000000000001, 0.1288, -1.3340000000000001, -1.0815999999999999, 0.1018, -0.82240000000000002, -0.88959999999999995, 0.45590000000000003, 1.1104000000000001, 0.73109999999999997, 0.89829999999999999, -1.4832000000000001, 0.65410000000000001, -0.012999999999999999, -0.71679999999999999, -0.30170000000000002, -0.3826, -1.0489999999999999, -1.9498, 0.37040000000000001, 0.25590000000000002, 1.3295999999999999, 1.1395, 0.18490000000000001, 0.85099999999999998, 1.5387999999999999, -0.69479999999999997, -0.26240000000000002, 0.26979999999999998, -1.3582000000000001, -1.0841000000000001, 0.6613, -0.43090000000000001, 0.45319999999999999, -0.11459999999999999, 1.2341, 0.27450000000000002, 0.13320000000000001, -0.27700000000000002, -1.0244, -1.5478000000000001, 2.6673, 0.31509999999999999, 1.0299, -0.88419999999999999, 0.47010000000000002, 0.38179999999999997, -0.86409999999999998, 2.0181, 1.4923999999999999, -0.1605, 1.1174999999999999, 1.1862999999999999, 0.59109999999999996, 0.54120000000000001, 0.1459, 0.0109, -1.4343999999999999, -0.42499999999999999];
// length 60
pub(crate) const PCF60_D: [f64; 60] = [0.4335, 0.20319999999999999, 0.0224, 2.4502000000000002, 0.5847, -0.61070000000000002, -0.18479999999999999, 0.51800000000000002, -0.97660000000000002, -0.5907, 2.6972, 3.8357000000000001, -0.84419999999999995, 2.6006, 0.2248, 3.2913000000000001, 0.121, 0.6976, 1.2316, -1.9775, 0.83999999999999997, 2.3717999999999999, -0.29110000000000003, 4.3122999999999996, 3.7583000000000002, 0.75019999999999998, -1.0065, -0.9728, 0.83350000000000002, 1.0647, -3.1202000000000001, 2.0592999999999999, -1.0670999999999999, 1.1923999999999999, -1.4370000000000001, -1.0418000000000001, 1.1919, -4.4428000000000001, 0.36220000000000002, -3.1267, 1.0683, -1.2044999999999999, 2.1934999999999998, -0.82299999999999995, 4.2384000000000004, 1.4512, 3.7776999999999998, 3.4664999999999999, 0.90259999999999996, -0.48459999999999998, -0.37380000000000002, 1.5049999999999999, -2.1313, -1.0638000000000001, -1.1721999999999999, 1.4638, -2.2801, 2.8047, 2.1126999999999998, 0.91310000000000002];
// length 60
pub(crate) const PCF60_Y: [f64; 60] = [0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0];

// length 5
pub(crate) const PCF60_GAMMA_CAP: [f64; 5] = [0.67696683927090151, 0.60519168866441064, 0.30745938531643369, 0.24330349486658043, -0.12313585306432809];

// length 5
pub(crate) const PCF60_KAPPA: [f64; 5] = [0.027834424346628639, 0.0, -0.069986182862013302, 0.051464882067338097, -0.37022812789774129];

// ---- expected values -------------------------------------------------------

pub(crate) const PROBIT12_LOGLIK: f64 = -4.8198644866469564;

// RF80 pipeline expectations
pub(crate) const RF80_XI0: f64 = -1.989647236211336;
pub(crate) const RF80_DELTA0: f64 = -0.69653873290766133;
pub(crate) const RF80_LAMBDA: f64 = 2.0933290794029209; // sqrt(log 80)
pub(crate) const RF80_S_HAT: [usize; 3] = [0, 1, 2];
pub(crate) const RF80_PI_HAT: [[bool; 3]; 3] = [
    [true, true, false],
    [true, true, false],
    [false, false, true],
];
pub(crate) const RF80_VM: [usize; 3] = [2, 2, 1];
pub(crate) const RF80_V_MP: [usize; 2] = [0, 1];
pub(crate) const RF80_VOTE_SE_01: f64 = 0.12741992094512267;
pub(crate) const RF80_A_TILDE: [f64; 4] = [
    0.9620011879988468,
    -0.15610729233482915,
    -0.15610729233482915,
    0.8585516544285601,
];
pub(crate) const RF80_BETA_TILDE: f64 = 0.87192180378970174;
pub(crate) const RF80_BETA_HAT: f64 = 0.88361138356663926;
pub(crate) const RF80_SE: f64 = 0.07389842778193928;
pub(crate) const RF80_CI: (f64, f64) = (0.73877312659990413, 1.0284496405333745);
pub(crate) const RF80_SEARCH_GRID: (f64, f64) = (-0.061975005331756039, 2.7726930406488695);
pub(crate) const RF80_SEARCH_HULL: (f64, f64) = (0.72251937639338204, 1.00811218202593);

// RF80 endogeneity test, V = S (treat all selected IVs as valid)
pub(crate) const RF80_ENDO_ALLVALID_BETA: f64 = 1.0432862707815236;
pub(crate) const RF80_ENDO_ALLVALID_SIGMA12: f64 = 0.29265664455928553;
pub(crate) const RF80_ENDO_ALLVALID_SE: f64 = 0.085381690454613732;
pub(crate) const RF80_ENDO_ALLVALID_Z: f64 = 3.4276276681925473;
pub(crate) const RF80_ENDO_ALLVALID_P: f64 = 0.00060887992878200237;
// RF80 endogeneity test, V = TSHT majority set {0,1}
pub(crate) const RF80_ENDO_TSHT_BETA: f64 = 0.87711187052484973;
pub(crate) const RF80_ENDO_TSHT_SIGMA12: f64 = 0.42609278555058605;
pub(crate) const RF80_ENDO_TSHT_SE: f64 = 0.098250494495840265;
pub(crate) const RF80_ENDO_TSHT_Z: f64 = 4.336800417514703;
pub(crate) const RF80_ENDO_TSHT_P: f64 = 1.445717855541595e-05;
pub(crate) const RF80_THETA11: f64 = 2.1161471999858348;
pub(crate) const RF80_THETA22: f64 = 0.80298855169745986;
pub(crate) const RF80_THETA12: f64 = 1.1304035761399851;

// Hand-checkable searching fixture: Gamma=(1, 1.02, 2), gamma=(1,1,1),
// V_Gamma = V_gamma = I, C = 0, n = 100, alpha = 0.05.
pub(crate) const SEARCH3_GRID: (f64, f64) = (-0.1180339887498949, 3.1180339887498949);
pub(crate) const SEARCH3_HULL: (f64, f64) = (0.72496171938880039, 1.4142441985962557);
pub(crate) const Z_1MINUS_05_OVER6: f64 = 2.3939797998185104; // Phi^-1(1 - 0.05/6)
pub(crate) const RHO_HAND: f64 = 0.31698221361189617878; // Phi^-1(0.9875) * sqrt(2/100)
pub(crate) const SAMPLING_LAMBDA_2000_500_10: f64 = 0.81113801895732450413; // (log 2000/500)^(1/20)

// CF30 expectations
pub(crate) const CF30_SIGMA2: f64 = 0.32618651698500201;
pub(crate) const CF30_HAUSMAN_H: f64 = 0.002099917888344236;
pub(crate) const CF30_HAUSMAN_P: f64 = 0.96344984338594952;
pub(crate) const CF30_CE: f64 = 1.2757513122991251;
pub(crate) const CF30_CE_SE: f64 = 0.14671707088244731;
pub(crate) const CF30_CE_CI: (f64, f64) = (0.98819113745231812, 1.5633114871459322);

// PCF60 expectations
pub(crate) const PCF60_GAMMA_HAT: [f64; 5] = [
    1.1161326960845752,
    1.0405800351162338,
    0.64898829568591243,
    0.32985157295175588,
    0.42485594703148738,
];
pub(crate) const PCF60_SIGMA_V: f64 = 1.0759340067378609;
pub(crate) const PCF60_THRESHOLDS: [f64; 3] =
    [0.4528107404331087, 0.40523157434125795, 0.39699208389582291];
pub(crate) const PCF60_S_HAT: [usize; 3] = [0, 1, 2];
pub(crate) const PCF60_RHO: f64 = 1.2724824815298443;
pub(crate) const PCF60_BETA: f64 = 0.58159071694740916;
pub(crate) const PCF60_D1: f64 = 1.55135;
pub(crate) const PCF60_D2: f64 = 0.55135000000000001;
pub(crate) const PCF60_W0: [f64; 4] = [
    0.17840166666666674,
    -0.14477666666666666,
    0.085598333333333401,
    0.029786666666666684,
];
pub(crate) const PCF60_CATE: f64 = 0.13983761399574324;
pub(crate) const PCF60_KAPPA_SE: [f64; 3] =
    [0.30734839278608772, 0.26783793126137878, 0.23749194561713063];
