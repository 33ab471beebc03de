// Generated by scripts/gen_unicode_tables.py from Python unicodedata
// (UCD 13.0.0). Do not edit by hand.
#include "unicode_tables.hpp"

namespace claimpipe::uni {

const CpRange kPunctRanges[] = {
    {0x21,0x23}, {0x25,0x2a}, {0x2c,0x2f}, {0x3a,0x3b}, {0x3f,0x40}, {0x5b,0x5d},
    {0x5f,0x5f}, {0x7b,0x7b}, {0x7d,0x7d}, {0xa1,0xa1}, {0xa7,0xa7}, {0xab,0xab},
    {0xb6,0xb7}, {0xbb,0xbb}, {0xbf,0xbf}, {0x37e,0x37e}, {0x387,0x387}, {0x55a,0x55f},
    {0x589,0x58a}, {0x5be,0x5be}, {0x5c0,0x5c0}, {0x5c3,0x5c3}, {0x5c6,0x5c6}, {0x5f3,0x5f4},
    {0x609,0x60a}, {0x60c,0x60d}, {0x61b,0x61b}, {0x61e,0x61f}, {0x66a,0x66d}, {0x6d4,0x6d4},
    {0x700,0x70d}, {0x7f7,0x7f9}, {0x830,0x83e}, {0x85e,0x85e}, {0x964,0x965}, {0x970,0x970},
    {0x9fd,0x9fd}, {0xa76,0xa76}, {0xaf0,0xaf0}, {0xc77,0xc77}, {0xc84,0xc84}, {0xdf4,0xdf4},
    {0xe4f,0xe4f}, {0xe5a,0xe5b}, {0xf04,0xf12}, {0xf14,0xf14}, {0xf3a,0xf3d}, {0xf85,0xf85},
    {0xfd0,0xfd4}, {0xfd9,0xfda}, {0x104a,0x104f}, {0x10fb,0x10fb}, {0x1360,0x1368}, {0x1400,0x1400},
    {0x166e,0x166e}, {0x169b,0x169c}, {0x16eb,0x16ed}, {0x1735,0x1736}, {0x17d4,0x17d6}, {0x17d8,0x17da},
    {0x1800,0x180a}, {0x1944,0x1945}, {0x1a1e,0x1a1f}, {0x1aa0,0x1aa6}, {0x1aa8,0x1aad}, {0x1b5a,0x1b60},
    {0x1bfc,0x1bff}, {0x1c3b,0x1c3f}, {0x1c7e,0x1c7f}, {0x1cc0,0x1cc7}, {0x1cd3,0x1cd3}, {0x2010,0x2027},
    {0x2030,0x2043}, {0x2045,0x2051}, {0x2053,0x205e}, {0x207d,0x207e}, {0x208d,0x208e}, {0x2308,0x230b},
    {0x2329,0x232a}, {0x2768,0x2775}, {0x27c5,0x27c6}, {0x27e6,0x27ef}, {0x2983,0x2998}, {0x29d8,0x29db},
    {0x29fc,0x29fd}, {0x2cf9,0x2cfc}, {0x2cfe,0x2cff}, {0x2d70,0x2d70}, {0x2e00,0x2e2e}, {0x2e30,0x2e4f},
    {0x2e52,0x2e52}, {0x3001,0x3003}, {0x3008,0x3011}, {0x3014,0x301f}, {0x3030,0x3030}, {0x303d,0x303d},
    {0x30a0,0x30a0}, {0x30fb,0x30fb}, {0xa4fe,0xa4ff}, {0xa60d,0xa60f}, {0xa673,0xa673}, {0xa67e,0xa67e},
    {0xa6f2,0xa6f7}, {0xa874,0xa877}, {0xa8ce,0xa8cf}, {0xa8f8,0xa8fa}, {0xa8fc,0xa8fc}, {0xa92e,0xa92f},
    {0xa95f,0xa95f}, {0xa9c1,0xa9cd}, {0xa9de,0xa9df}, {0xaa5c,0xaa5f}, {0xaade,0xaadf}, {0xaaf0,0xaaf1},
    {0xabeb,0xabeb}, {0xfd3e,0xfd3f}, {0xfe10,0xfe19}, {0xfe30,0xfe52}, {0xfe54,0xfe61}, {0xfe63,0xfe63},
    {0xfe68,0xfe68}, {0xfe6a,0xfe6b}, {0xff01,0xff03}, {0xff05,0xff0a}, {0xff0c,0xff0f}, {0xff1a,0xff1b},
    {0xff1f,0xff20}, {0xff3b,0xff3d}, {0xff3f,0xff3f}, {0xff5b,0xff5b}, {0xff5d,0xff5d}, {0xff5f,0xff65},
    {0x10100,0x10102}, {0x1039f,0x1039f}, {0x103d0,0x103d0}, {0x1056f,0x1056f}, {0x10857,0x10857}, {0x1091f,0x1091f},
    {0x1093f,0x1093f}, {0x10a50,0x10a58}, {0x10a7f,0x10a7f}, {0x10af0,0x10af6}, {0x10b39,0x10b3f}, {0x10b99,0x10b9c},
    {0x10ead,0x10ead}, {0x10f55,0x10f59}, {0x11047,0x1104d}, {0x110bb,0x110bc}, {0x110be,0x110c1}, {0x11140,0x11143},
    {0x11174,0x11175}, {0x111c5,0x111c8}, {0x111cd,0x111cd}, {0x111db,0x111db}, {0x111dd,0x111df}, {0x11238,0x1123d},
    {0x112a9,0x112a9}, {0x1144b,0x1144f}, {0x1145a,0x1145b}, {0x1145d,0x1145d}, {0x114c6,0x114c6}, {0x115c1,0x115d7},
    {0x11641,0x11643}, {0x11660,0x1166c}, {0x1173c,0x1173e}, {0x1183b,0x1183b}, {0x11944,0x11946}, {0x119e2,0x119e2},
    {0x11a3f,0x11a46}, {0x11a9a,0x11a9c}, {0x11a9e,0x11aa2}, {0x11c41,0x11c45}, {0x11c70,0x11c71}, {0x11ef7,0x11ef8},
    {0x11fff,0x11fff}, {0x12470,0x12474}, {0x16a6e,0x16a6f}, {0x16af5,0x16af5}, {0x16b37,0x16b3b}, {0x16b44,0x16b44},
    {0x16e97,0x16e9a}, {0x16fe2,0x16fe2}, {0x1bc9f,0x1bc9f}, {0x1da87,0x1da8b}, {0x1e95e,0x1e95f},
};
const std::size_t kPunctRangeCount = 185;

const CpRange kWordRanges[] = {
    {0x30,0x39}, {0x41,0x5a}, {0x61,0x7a}, {0xaa,0xaa}, {0xb2,0xb3}, {0xb5,0xb5},
    {0xb9,0xba}, {0xbc,0xbe}, {0xc0,0xd6}, {0xd8,0xf6}, {0xf8,0x2c1}, {0x2c6,0x2d1},
    {0x2e0,0x2e4}, {0x2ec,0x2ec}, {0x2ee,0x2ee}, {0x370,0x374}, {0x376,0x377}, {0x37a,0x37d},
    {0x37f,0x37f}, {0x386,0x386}, {0x388,0x38a}, {0x38c,0x38c}, {0x38e,0x3a1}, {0x3a3,0x3f5},
    {0x3f7,0x481}, {0x48a,0x52f}, {0x531,0x556}, {0x559,0x559}, {0x560,0x588}, {0x5d0,0x5ea},
    {0x5ef,0x5f2}, {0x620,0x64a}, {0x660,0x669}, {0x66e,0x66f}, {0x671,0x6d3}, {0x6d5,0x6d5},
    {0x6e5,0x6e6}, {0x6ee,0x6fc}, {0x6ff,0x6ff}, {0x710,0x710}, {0x712,0x72f}, {0x74d,0x7a5},
    {0x7b1,0x7b1}, {0x7c0,0x7ea}, {0x7f4,0x7f5}, {0x7fa,0x7fa}, {0x800,0x815}, {0x81a,0x81a},
    {0x824,0x824}, {0x828,0x828}, {0x840,0x858}, {0x860,0x86a}, {0x8a0,0x8b4}, {0x8b6,0x8c7},
    {0x904,0x939}, {0x93d,0x93d}, {0x950,0x950}, {0x958,0x961}, {0x966,0x96f}, {0x971,0x980},
    {0x985,0x98c}, {0x98f,0x990}, {0x993,0x9a8}, {0x9aa,0x9b0}, {0x9b2,0x9b2}, {0x9b6,0x9b9},
    {0x9bd,0x9bd}, {0x9ce,0x9ce}, {0x9dc,0x9dd}, {0x9df,0x9e1}, {0x9e6,0x9f1}, {0x9f4,0x9f9},
    {0x9fc,0x9fc}, {0xa05,0xa0a}, {0xa0f,0xa10}, {0xa13,0xa28}, {0xa2a,0xa30}, {0xa32,0xa33},
    {0xa35,0xa36}, {0xa38,0xa39}, {0xa59,0xa5c}, {0xa5e,0xa5e}, {0xa66,0xa6f}, {0xa72,0xa74},
    {0xa85,0xa8d}, {0xa8f,0xa91}, {0xa93,0xaa8}, {0xaaa,0xab0}, {0xab2,0xab3}, {0xab5,0xab9},
    {0xabd,0xabd}, {0xad0,0xad0}, {0xae0,0xae1}, {0xae6,0xaef}, {0xaf9,0xaf9}, {0xb05,0xb0c},
    {0xb0f,0xb10}, {0xb13,0xb28}, {0xb2a,0xb30}, {0xb32,0xb33}, {0xb35,0xb39}, {0xb3d,0xb3d},
    {0xb5c,0xb5d}, {0xb5f,0xb61}, {0xb66,0xb6f}, {0xb71,0xb77}, {0xb83,0xb83}, {0xb85,0xb8a},
    {0xb8e,0xb90}, {0xb92,0xb95}, {0xb99,0xb9a}, {0xb9c,0xb9c}, {0xb9e,0xb9f}, {0xba3,0xba4},
    {0xba8,0xbaa}, {0xbae,0xbb9}, {0xbd0,0xbd0}, {0xbe6,0xbf2}, {0xc05,0xc0c}, {0xc0e,0xc10},
    {0xc12,0xc28}, {0xc2a,0xc39}, {0xc3d,0xc3d}, {0xc58,0xc5a}, {0xc60,0xc61}, {0xc66,0xc6f},
    {0xc78,0xc7e}, {0xc80,0xc80}, {0xc85,0xc8c}, {0xc8e,0xc90}, {0xc92,0xca8}, {0xcaa,0xcb3},
    {0xcb5,0xcb9}, {0xcbd,0xcbd}, {0xcde,0xcde}, {0xce0,0xce1}, {0xce6,0xcef}, {0xcf1,0xcf2},
    {0xd04,0xd0c}, {0xd0e,0xd10}, {0xd12,0xd3a}, {0xd3d,0xd3d}, {0xd4e,0xd4e}, {0xd54,0xd56},
    {0xd58,0xd61}, {0xd66,0xd78}, {0xd7a,0xd7f}, {0xd85,0xd96}, {0xd9a,0xdb1}, {0xdb3,0xdbb},
    {0xdbd,0xdbd}, {0xdc0,0xdc6}, {0xde6,0xdef}, {0xe01,0xe30}, {0xe32,0xe33}, {0xe40,0xe46},
    {0xe50,0xe59}, {0xe81,0xe82}, {0xe84,0xe84}, {0xe86,0xe8a}, {0xe8c,0xea3}, {0xea5,0xea5},
    {0xea7,0xeb0}, {0xeb2,0xeb3}, {0xebd,0xebd}, {0xec0,0xec4}, {0xec6,0xec6}, {0xed0,0xed9},
    {0xedc,0xedf}, {0xf00,0xf00}, {0xf20,0xf33}, {0xf40,0xf47}, {0xf49,0xf6c}, {0xf88,0xf8c},
    {0x1000,0x102a}, {0x103f,0x1049}, {0x1050,0x1055}, {0x105a,0x105d}, {0x1061,0x1061}, {0x1065,0x1066},
    {0x106e,0x1070}, {0x1075,0x1081}, {0x108e,0x108e}, {0x1090,0x1099}, {0x10a0,0x10c5}, {0x10c7,0x10c7},
    {0x10cd,0x10cd}, {0x10d0,0x10fa}, {0x10fc,0x1248}, {0x124a,0x124d}, {0x1250,0x1256}, {0x1258,0x1258},
    {0x125a,0x125d}, {0x1260,0x1288}, {0x128a,0x128d}, {0x1290,0x12b0}, {0x12b2,0x12b5}, {0x12b8,0x12be},
    {0x12c0,0x12c0}, {0x12c2,0x12c5}, {0x12c8,0x12d6}, {0x12d8,0x1310}, {0x1312,0x1315}, {0x1318,0x135a},
    {0x1369,0x137c}, {0x1380,0x138f}, {0x13a0,0x13f5}, {0x13f8,0x13fd}, {0x1401,0x166c}, {0x166f,0x167f},
    {0x1681,0x169a}, {0x16a0,0x16ea}, {0x16ee,0x16f8}, {0x1700,0x170c}, {0x170e,0x1711}, {0x1720,0x1731},
    {0x1740,0x1751}, {0x1760,0x176c}, {0x176e,0x1770}, {0x1780,0x17b3}, {0x17d7,0x17d7}, {0x17dc,0x17dc},
    {0x17e0,0x17e9}, {0x17f0,0x17f9}, {0x1810,0x1819}, {0x1820,0x1878}, {0x1880,0x1884}, {0x1887,0x18a8},
    {0x18aa,0x18aa}, {0x18b0,0x18f5}, {0x1900,0x191e}, {0x1946,0x196d}, {0x1970,0x1974}, {0x1980,0x19ab},
    {0x19b0,0x19c9}, {0x19d0,0x19da}, {0x1a00,0x1a16}, {0x1a20,0x1a54}, {0x1a80,0x1a89}, {0x1a90,0x1a99},
    {0x1aa7,0x1aa7}, {0x1b05,0x1b33}, {0x1b45,0x1b4b}, {0x1b50,0x1b59}, {0x1b83,0x1ba0}, {0x1bae,0x1be5},
    {0x1c00,0x1c23}, {0x1c40,0x1c49}, {0x1c4d,0x1c7d}, {0x1c80,0x1c88}, {0x1c90,0x1cba}, {0x1cbd,0x1cbf},
    {0x1ce9,0x1cec}, {0x1cee,0x1cf3}, {0x1cf5,0x1cf6}, {0x1cfa,0x1cfa}, {0x1d00,0x1dbf}, {0x1e00,0x1f15},
    {0x1f18,0x1f1d}, {0x1f20,0x1f45}, {0x1f48,0x1f4d}, {0x1f50,0x1f57}, {0x1f59,0x1f59}, {0x1f5b,0x1f5b},
    {0x1f5d,0x1f5d}, {0x1f5f,0x1f7d}, {0x1f80,0x1fb4}, {0x1fb6,0x1fbc}, {0x1fbe,0x1fbe}, {0x1fc2,0x1fc4},
    {0x1fc6,0x1fcc}, {0x1fd0,0x1fd3}, {0x1fd6,0x1fdb}, {0x1fe0,0x1fec}, {0x1ff2,0x1ff4}, {0x1ff6,0x1ffc},
    {0x2070,0x2071}, {0x2074,0x2079}, {0x207f,0x2089}, {0x2090,0x209c}, {0x2102,0x2102}, {0x2107,0x2107},
    {0x210a,0x2113}, {0x2115,0x2115}, {0x2119,0x211d}, {0x2124,0x2124}, {0x2126,0x2126}, {0x2128,0x2128},
    {0x212a,0x212d}, {0x212f,0x2139}, {0x213c,0x213f}, {0x2145,0x2149}, {0x214e,0x214e}, {0x2150,0x2189},
    {0x2460,0x249b}, {0x24ea,0x24ff}, {0x2776,0x2793}, {0x2c00,0x2c2e}, {0x2c30,0x2c5e}, {0x2c60,0x2ce4},
    {0x2ceb,0x2cee}, {0x2cf2,0x2cf3}, {0x2cfd,0x2cfd}, {0x2d00,0x2d25}, {0x2d27,0x2d27}, {0x2d2d,0x2d2d},
    {0x2d30,0x2d67}, {0x2d6f,0x2d6f}, {0x2d80,0x2d96}, {0x2da0,0x2da6}, {0x2da8,0x2dae}, {0x2db0,0x2db6},
    {0x2db8,0x2dbe}, {0x2dc0,0x2dc6}, {0x2dc8,0x2dce}, {0x2dd0,0x2dd6}, {0x2dd8,0x2dde}, {0x2e2f,0x2e2f},
    {0x3005,0x3007}, {0x3021,0x3029}, {0x3031,0x3035}, {0x3038,0x303c}, {0x3041,0x3096}, {0x309d,0x309f},
    {0x30a1,0x30fa}, {0x30fc,0x30ff}, {0x3105,0x312f}, {0x3131,0x318e}, {0x3192,0x3195}, {0x31a0,0x31bf},
    {0x31f0,0x31ff}, {0x3220,0x3229}, {0x3248,0x324f}, {0x3251,0x325f}, {0x3280,0x3289}, {0x32b1,0x32bf},
    {0x3400,0x4dbf}, {0x4e00,0x9ffc}, {0xa000,0xa48c}, {0xa4d0,0xa4fd}, {0xa500,0xa60c}, {0xa610,0xa62b},
    {0xa640,0xa66e}, {0xa67f,0xa69d}, {0xa6a0,0xa6ef}, {0xa717,0xa71f}, {0xa722,0xa788}, {0xa78b,0xa7bf},
    {0xa7c2,0xa7ca}, {0xa7f5,0xa801}, {0xa803,0xa805}, {0xa807,0xa80a}, {0xa80c,0xa822}, {0xa830,0xa835},
    {0xa840,0xa873}, {0xa882,0xa8b3}, {0xa8d0,0xa8d9}, {0xa8f2,0xa8f7}, {0xa8fb,0xa8fb}, {0xa8fd,0xa8fe},
    {0xa900,0xa925}, {0xa930,0xa946}, {0xa960,0xa97c}, {0xa984,0xa9b2}, {0xa9cf,0xa9d9}, {0xa9e0,0xa9e4},
    {0xa9e6,0xa9fe}, {0xaa00,0xaa28}, {0xaa40,0xaa42}, {0xaa44,0xaa4b}, {0xaa50,0xaa59}, {0xaa60,0xaa76},
    {0xaa7a,0xaa7a}, {0xaa7e,0xaaaf}, {0xaab1,0xaab1}, {0xaab5,0xaab6}, {0xaab9,0xaabd}, {0xaac0,0xaac0},
    {0xaac2,0xaac2}, {0xaadb,0xaadd}, {0xaae0,0xaaea}, {0xaaf2,0xaaf4}, {0xab01,0xab06}, {0xab09,0xab0e},
    {0xab11,0xab16}, {0xab20,0xab26}, {0xab28,0xab2e}, {0xab30,0xab5a}, {0xab5c,0xab69}, {0xab70,0xabe2},
    {0xabf0,0xabf9}, {0xac00,0xd7a3}, {0xd7b0,0xd7c6}, {0xd7cb,0xd7fb}, {0xf900,0xfa6d}, {0xfa70,0xfad9},
    {0xfb00,0xfb06}, {0xfb13,0xfb17}, {0xfb1d,0xfb1d}, {0xfb1f,0xfb28}, {0xfb2a,0xfb36}, {0xfb38,0xfb3c},
    {0xfb3e,0xfb3e}, {0xfb40,0xfb41}, {0xfb43,0xfb44}, {0xfb46,0xfbb1}, {0xfbd3,0xfd3d}, {0xfd50,0xfd8f},
    {0xfd92,0xfdc7}, {0xfdf0,0xfdfb}, {0xfe70,0xfe74}, {0xfe76,0xfefc}, {0xff10,0xff19}, {0xff21,0xff3a},
    {0xff41,0xff5a}, {0xff66,0xffbe}, {0xffc2,0xffc7}, {0xffca,0xffcf}, {0xffd2,0xffd7}, {0xffda,0xffdc},
    {0x10000,0x1000b}, {0x1000d,0x10026}, {0x10028,0x1003a}, {0x1003c,0x1003d}, {0x1003f,0x1004d}, {0x10050,0x1005d},
    {0x10080,0x100fa}, {0x10107,0x10133}, {0x10140,0x10178}, {0x1018a,0x1018b}, {0x10280,0x1029c}, {0x102a0,0x102d0},
    {0x102e1,0x102fb}, {0x10300,0x10323}, {0x1032d,0x1034a}, {0x10350,0x10375}, {0x10380,0x1039d}, {0x103a0,0x103c3},
    {0x103c8,0x103cf}, {0x103d1,0x103d5}, {0x10400,0x1049d}, {0x104a0,0x104a9}, {0x104b0,0x104d3}, {0x104d8,0x104fb},
    {0x10500,0x10527}, {0x10530,0x10563}, {0x10600,0x10736}, {0x10740,0x10755}, {0x10760,0x10767}, {0x10800,0x10805},
    {0x10808,0x10808}, {0x1080a,0x10835}, {0x10837,0x10838}, {0x1083c,0x1083c}, {0x1083f,0x10855}, {0x10858,0x10876},
    {0x10879,0x1089e}, {0x108a7,0x108af}, {0x108e0,0x108f2}, {0x108f4,0x108f5}, {0x108fb,0x1091b}, {0x10920,0x10939},
    {0x10980,0x109b7}, {0x109bc,0x109cf}, {0x109d2,0x10a00}, {0x10a10,0x10a13}, {0x10a15,0x10a17}, {0x10a19,0x10a35},
    {0x10a40,0x10a48}, {0x10a60,0x10a7e}, {0x10a80,0x10a9f}, {0x10ac0,0x10ac7}, {0x10ac9,0x10ae4}, {0x10aeb,0x10aef},
    {0x10b00,0x10b35}, {0x10b40,0x10b55}, {0x10b58,0x10b72}, {0x10b78,0x10b91}, {0x10ba9,0x10baf}, {0x10c00,0x10c48},
    {0x10c80,0x10cb2}, {0x10cc0,0x10cf2}, {0x10cfa,0x10d23}, {0x10d30,0x10d39}, {0x10e60,0x10e7e}, {0x10e80,0x10ea9},
    {0x10eb0,0x10eb1}, {0x10f00,0x10f27}, {0x10f30,0x10f45}, {0x10f51,0x10f54}, {0x10fb0,0x10fcb}, {0x10fe0,0x10ff6},
    {0x11003,0x11037}, {0x11052,0x1106f}, {0x11083,0x110af}, {0x110d0,0x110e8}, {0x110f0,0x110f9}, {0x11103,0x11126},
    {0x11136,0x1113f}, {0x11144,0x11144}, {0x11147,0x11147}, {0x11150,0x11172}, {0x11176,0x11176}, {0x11183,0x111b2},
    {0x111c1,0x111c4}, {0x111d0,0x111da}, {0x111dc,0x111dc}, {0x111e1,0x111f4}, {0x11200,0x11211}, {0x11213,0x1122b},
    {0x11280,0x11286}, {0x11288,0x11288}, {0x1128a,0x1128d}, {0x1128f,0x1129d}, {0x1129f,0x112a8}, {0x112b0,0x112de},
    {0x112f0,0x112f9}, {0x11305,0x1130c}, {0x1130f,0x11310}, {0x11313,0x11328}, {0x1132a,0x11330}, {0x11332,0x11333},
    {0x11335,0x11339}, {0x1133d,0x1133d}, {0x11350,0x11350}, {0x1135d,0x11361}, {0x11400,0x11434}, {0x11447,0x1144a},
    {0x11450,0x11459}, {0x1145f,0x11461}, {0x11480,0x114af}, {0x114c4,0x114c5}, {0x114c7,0x114c7}, {0x114d0,0x114d9},
    {0x11580,0x115ae}, {0x115d8,0x115db}, {0x11600,0x1162f}, {0x11644,0x11644}, {0x11650,0x11659}, {0x11680,0x116aa},
    {0x116b8,0x116b8}, {0x116c0,0x116c9}, {0x11700,0x1171a}, {0x11730,0x1173b}, {0x11800,0x1182b}, {0x118a0,0x118f2},
    {0x118ff,0x11906}, {0x11909,0x11909}, {0x1190c,0x11913}, {0x11915,0x11916}, {0x11918,0x1192f}, {0x1193f,0x1193f},
    {0x11941,0x11941}, {0x11950,0x11959}, {0x119a0,0x119a7}, {0x119aa,0x119d0}, {0x119e1,0x119e1}, {0x119e3,0x119e3},
    {0x11a00,0x11a00}, {0x11a0b,0x11a32}, {0x11a3a,0x11a3a}, {0x11a50,0x11a50}, {0x11a5c,0x11a89}, {0x11a9d,0x11a9d},
    {0x11ac0,0x11af8}, {0x11c00,0x11c08}, {0x11c0a,0x11c2e}, {0x11c40,0x11c40}, {0x11c50,0x11c6c}, {0x11c72,0x11c8f},
    {0x11d00,0x11d06}, {0x11d08,0x11d09}, {0x11d0b,0x11d30}, {0x11d46,0x11d46}, {0x11d50,0x11d59}, {0x11d60,0x11d65},
    {0x11d67,0x11d68}, {0x11d6a,0x11d89}, {0x11d98,0x11d98}, {0x11da0,0x11da9}, {0x11ee0,0x11ef2}, {0x11fb0,0x11fb0},
    {0x11fc0,0x11fd4}, {0x12000,0x12399}, {0x12400,0x1246e}, {0x12480,0x12543}, {0x13000,0x1342e}, {0x14400,0x14646},
    {0x16800,0x16a38}, {0x16a40,0x16a5e}, {0x16a60,0x16a69}, {0x16ad0,0x16aed}, {0x16b00,0x16b2f}, {0x16b40,0x16b43},
    {0x16b50,0x16b59}, {0x16b5b,0x16b61}, {0x16b63,0x16b77}, {0x16b7d,0x16b8f}, {0x16e40,0x16e96}, {0x16f00,0x16f4a},
    {0x16f50,0x16f50}, {0x16f93,0x16f9f}, {0x16fe0,0x16fe1}, {0x16fe3,0x16fe3}, {0x17000,0x187f7}, {0x18800,0x18cd5},
    {0x18d00,0x18d08}, {0x1b000,0x1b11e}, {0x1b150,0x1b152}, {0x1b164,0x1b167}, {0x1b170,0x1b2fb}, {0x1bc00,0x1bc6a},
    {0x1bc70,0x1bc7c}, {0x1bc80,0x1bc88}, {0x1bc90,0x1bc99}, {0x1d2e0,0x1d2f3}, {0x1d360,0x1d378}, {0x1d400,0x1d454},
    {0x1d456,0x1d49c}, {0x1d49e,0x1d49f}, {0x1d4a2,0x1d4a2}, {0x1d4a5,0x1d4a6}, {0x1d4a9,0x1d4ac}, {0x1d4ae,0x1d4b9},
    {0x1d4bb,0x1d4bb}, {0x1d4bd,0x1d4c3}, {0x1d4c5,0x1d505}, {0x1d507,0x1d50a}, {0x1d50d,0x1d514}, {0x1d516,0x1d51c},
    {0x1d51e,0x1d539}, {0x1d53b,0x1d53e}, {0x1d540,0x1d544}, {0x1d546,0x1d546}, {0x1d54a,0x1d550}, {0x1d552,0x1d6a5},
    {0x1d6a8,0x1d6c0}, {0x1d6c2,0x1d6da}, {0x1d6dc,0x1d6fa}, {0x1d6fc,0x1d714}, {0x1d716,0x1d734}, {0x1d736,0x1d74e},
    {0x1d750,0x1d76e}, {0x1d770,0x1d788}, {0x1d78a,0x1d7a8}, {0x1d7aa,0x1d7c2}, {0x1d7c4,0x1d7cb}, {0x1d7ce,0x1d7ff},
    {0x1e100,0x1e12c}, {0x1e137,0x1e13d}, {0x1e140,0x1e149}, {0x1e14e,0x1e14e}, {0x1e2c0,0x1e2eb}, {0x1e2f0,0x1e2f9},
    {0x1e800,0x1e8c4}, {0x1e8c7,0x1e8cf}, {0x1e900,0x1e943}, {0x1e94b,0x1e94b}, {0x1e950,0x1e959}, {0x1ec71,0x1ecab},
    {0x1ecad,0x1ecaf}, {0x1ecb1,0x1ecb4}, {0x1ed01,0x1ed2d}, {0x1ed2f,0x1ed3d}, {0x1ee00,0x1ee03}, {0x1ee05,0x1ee1f},
    {0x1ee21,0x1ee22}, {0x1ee24,0x1ee24}, {0x1ee27,0x1ee27}, {0x1ee29,0x1ee32}, {0x1ee34,0x1ee37}, {0x1ee39,0x1ee39},
    {0x1ee3b,0x1ee3b}, {0x1ee42,0x1ee42}, {0x1ee47,0x1ee47}, {0x1ee49,0x1ee49}, {0x1ee4b,0x1ee4b}, {0x1ee4d,0x1ee4f},
    {0x1ee51,0x1ee52}, {0x1ee54,0x1ee54}, {0x1ee57,0x1ee57}, {0x1ee59,0x1ee59}, {0x1ee5b,0x1ee5b}, {0x1ee5d,0x1ee5d},
    {0x1ee5f,0x1ee5f}, {0x1ee61,0x1ee62}, {0x1ee64,0x1ee64}, {0x1ee67,0x1ee6a}, {0x1ee6c,0x1ee72}, {0x1ee74,0x1ee77},
    {0x1ee79,0x1ee7c}, {0x1ee7e,0x1ee7e}, {0x1ee80,0x1ee89}, {0x1ee8b,0x1ee9b}, {0x1eea1,0x1eea3}, {0x1eea5,0x1eea9},
    {0x1eeab,0x1eebb}, {0x1f100,0x1f10c}, {0x1fbf0,0x1fbf9}, {0x20000,0x2a6dd}, {0x2a700,0x2b734}, {0x2b740,0x2b81d},
    {0x2b820,0x2cea1}, {0x2ceb0,0x2ebe0}, {0x2f800,0x2fa1d}, {0x30000,0x3134a},
};
const std::size_t kWordRangeCount = 706;

const CpPair kFoldPairs[] = {
    {0x41,0x61}, {0x42,0x62}, {0x43,0x63}, {0x44,0x64}, {0x45,0x65}, {0x46,0x66},
    {0x47,0x67}, {0x48,0x68}, {0x49,0x69}, {0x4a,0x6a}, {0x4b,0x6b}, {0x4c,0x6c},
    {0x4d,0x6d}, {0x4e,0x6e}, {0x4f,0x6f}, {0x50,0x70}, {0x51,0x71}, {0x52,0x72},
    {0x53,0x73}, {0x54,0x74}, {0x55,0x75}, {0x56,0x76}, {0x57,0x77}, {0x58,0x78},
    {0x59,0x79}, {0x5a,0x7a}, {0xc0,0xe0}, {0xc1,0xe1}, {0xc2,0xe2}, {0xc3,0xe3},
    {0xc4,0xe4}, {0xc5,0xe5}, {0xc6,0xe6}, {0xc7,0xe7}, {0xc8,0xe8}, {0xc9,0xe9},
    {0xca,0xea}, {0xcb,0xeb}, {0xcc,0xec}, {0xcd,0xed}, {0xce,0xee}, {0xcf,0xef},
    {0xd0,0xf0}, {0xd1,0xf1}, {0xd2,0xf2}, {0xd3,0xf3}, {0xd4,0xf4}, {0xd5,0xf5},
    {0xd6,0xf6}, {0xd8,0xf8}, {0xd9,0xf9}, {0xda,0xfa}, {0xdb,0xfb}, {0xdc,0xfc},
    {0xdd,0xfd}, {0xde,0xfe}, {0x100,0x101}, {0x102,0x103}, {0x104,0x105}, {0x106,0x107},
    {0x108,0x109}, {0x10a,0x10b}, {0x10c,0x10d}, {0x10e,0x10f}, {0x110,0x111}, {0x112,0x113},
    {0x114,0x115}, {0x116,0x117}, {0x118,0x119}, {0x11a,0x11b}, {0x11c,0x11d}, {0x11e,0x11f},
    {0x120,0x121}, {0x122,0x123}, {0x124,0x125}, {0x126,0x127}, {0x128,0x129}, {0x12a,0x12b},
    {0x12c,0x12d}, {0x12e,0x12f}, {0x132,0x133}, {0x134,0x135}, {0x136,0x137}, {0x139,0x13a},
    {0x13b,0x13c}, {0x13d,0x13e}, {0x13f,0x140}, {0x141,0x142}, {0x143,0x144}, {0x145,0x146},
    {0x147,0x148}, {0x14a,0x14b}, {0x14c,0x14d}, {0x14e,0x14f}, {0x150,0x151}, {0x152,0x153},
    {0x154,0x155}, {0x156,0x157}, {0x158,0x159}, {0x15a,0x15b}, {0x15c,0x15d}, {0x15e,0x15f},
    {0x160,0x161}, {0x162,0x163}, {0x164,0x165}, {0x166,0x167}, {0x168,0x169}, {0x16a,0x16b},
    {0x16c,0x16d}, {0x16e,0x16f}, {0x170,0x171}, {0x172,0x173}, {0x174,0x175}, {0x176,0x177},
    {0x178,0xff}, {0x179,0x17a}, {0x17b,0x17c}, {0x17d,0x17e}, {0x181,0x253}, {0x182,0x183},
    {0x184,0x185}, {0x186,0x254}, {0x187,0x188}, {0x189,0x256}, {0x18a,0x257}, {0x18b,0x18c},
    {0x18e,0x1dd}, {0x18f,0x259}, {0x190,0x25b}, {0x191,0x192}, {0x193,0x260}, {0x194,0x263},
    {0x196,0x269}, {0x197,0x268}, {0x198,0x199}, {0x19c,0x26f}, {0x19d,0x272}, {0x19f,0x275},
    {0x1a0,0x1a1}, {0x1a2,0x1a3}, {0x1a4,0x1a5}, {0x1a6,0x280}, {0x1a7,0x1a8}, {0x1a9,0x283},
    {0x1ac,0x1ad}, {0x1ae,0x288}, {0x1af,0x1b0}, {0x1b1,0x28a}, {0x1b2,0x28b}, {0x1b3,0x1b4},
    {0x1b5,0x1b6}, {0x1b7,0x292}, {0x1b8,0x1b9}, {0x1bc,0x1bd}, {0x1c4,0x1c6}, {0x1c5,0x1c6},
    {0x1c7,0x1c9}, {0x1c8,0x1c9}, {0x1ca,0x1cc}, {0x1cb,0x1cc}, {0x1cd,0x1ce}, {0x1cf,0x1d0},
    {0x1d1,0x1d2}, {0x1d3,0x1d4}, {0x1d5,0x1d6}, {0x1d7,0x1d8}, {0x1d9,0x1da}, {0x1db,0x1dc},
    {0x1de,0x1df}, {0x1e0,0x1e1}, {0x1e2,0x1e3}, {0x1e4,0x1e5}, {0x1e6,0x1e7}, {0x1e8,0x1e9},
    {0x1ea,0x1eb}, {0x1ec,0x1ed}, {0x1ee,0x1ef}, {0x1f1,0x1f3}, {0x1f2,0x1f3}, {0x1f4,0x1f5},
    {0x1f6,0x195}, {0x1f7,0x1bf}, {0x1f8,0x1f9}, {0x1fa,0x1fb}, {0x1fc,0x1fd}, {0x1fe,0x1ff},
    {0x200,0x201}, {0x202,0x203}, {0x204,0x205}, {0x206,0x207}, {0x208,0x209}, {0x20a,0x20b},
    {0x20c,0x20d}, {0x20e,0x20f}, {0x210,0x211}, {0x212,0x213}, {0x214,0x215}, {0x216,0x217},
    {0x218,0x219}, {0x21a,0x21b}, {0x21c,0x21d}, {0x21e,0x21f}, {0x220,0x19e}, {0x222,0x223},
    {0x224,0x225}, {0x226,0x227}, {0x228,0x229}, {0x22a,0x22b}, {0x22c,0x22d}, {0x22e,0x22f},
    {0x230,0x231}, {0x232,0x233}, {0x23a,0x2c65}, {0x23b,0x23c}, {0x23d,0x19a}, {0x23e,0x2c66},
    {0x241,0x242}, {0x243,0x180}, {0x244,0x289}, {0x245,0x28c}, {0x246,0x247}, {0x248,0x249},
    {0x24a,0x24b}, {0x24c,0x24d}, {0x24e,0x24f}, {0x370,0x371}, {0x372,0x373}, {0x376,0x377},
    {0x37f,0x3f3}, {0x386,0x3ac}, {0x388,0x3ad}, {0x389,0x3ae}, {0x38a,0x3af}, {0x38c,0x3cc},
    {0x38e,0x3cd}, {0x38f,0x3ce}, {0x391,0x3b1}, {0x392,0x3b2}, {0x393,0x3b3}, {0x394,0x3b4},
    {0x395,0x3b5}, {0x396,0x3b6}, {0x397,0x3b7}, {0x398,0x3b8}, {0x399,0x3b9}, {0x39a,0x3ba},
    {0x39b,0x3bb}, {0x39c,0x3bc}, {0x39d,0x3bd}, {0x39e,0x3be}, {0x39f,0x3bf}, {0x3a0,0x3c0},
    {0x3a1,0x3c1}, {0x3a3,0x3c3}, {0x3a4,0x3c4}, {0x3a5,0x3c5}, {0x3a6,0x3c6}, {0x3a7,0x3c7},
    {0x3a8,0x3c8}, {0x3a9,0x3c9}, {0x3aa,0x3ca}, {0x3ab,0x3cb}, {0x3cf,0x3d7}, {0x3d8,0x3d9},
    {0x3da,0x3db}, {0x3dc,0x3dd}, {0x3de,0x3df}, {0x3e0,0x3e1}, {0x3e2,0x3e3}, {0x3e4,0x3e5},
    {0x3e6,0x3e7}, {0x3e8,0x3e9}, {0x3ea,0x3eb}, {0x3ec,0x3ed}, {0x3ee,0x3ef}, {0x3f4,0x3b8},
    {0x3f7,0x3f8}, {0x3f9,0x3f2}, {0x3fa,0x3fb}, {0x3fd,0x37b}, {0x3fe,0x37c}, {0x3ff,0x37d},
    {0x400,0x450}, {0x401,0x451}, {0x402,0x452}, {0x403,0x453}, {0x404,0x454}, {0x405,0x455},
    {0x406,0x456}, {0x407,0x457}, {0x408,0x458}, {0x409,0x459}, {0x40a,0x45a}, {0x40b,0x45b},
    {0x40c,0x45c}, {0x40d,0x45d}, {0x40e,0x45e}, {0x40f,0x45f}, {0x410,0x430}, {0x411,0x431},
    {0x412,0x432}, {0x413,0x433}, {0x414,0x434}, {0x415,0x435}, {0x416,0x436}, {0x417,0x437},
    {0x418,0x438}, {0x419,0x439}, {0x41a,0x43a}, {0x41b,0x43b}, {0x41c,0x43c}, {0x41d,0x43d},
    {0x41e,0x43e}, {0x41f,0x43f}, {0x420,0x440}, {0x421,0x441}, {0x422,0x442}, {0x423,0x443},
    {0x424,0x444}, {0x425,0x445}, {0x426,0x446}, {0x427,0x447}, {0x428,0x448}, {0x429,0x449},
    {0x42a,0x44a}, {0x42b,0x44b}, {0x42c,0x44c}, {0x42d,0x44d}, {0x42e,0x44e}, {0x42f,0x44f},
    {0x460,0x461}, {0x462,0x463}, {0x464,0x465}, {0x466,0x467}, {0x468,0x469}, {0x46a,0x46b},
    {0x46c,0x46d}, {0x46e,0x46f}, {0x470,0x471}, {0x472,0x473}, {0x474,0x475}, {0x476,0x477},
    {0x478,0x479}, {0x47a,0x47b}, {0x47c,0x47d}, {0x47e,0x47f}, {0x480,0x481}, {0x48a,0x48b},
    {0x48c,0x48d}, {0x48e,0x48f}, {0x490,0x491}, {0x492,0x493}, {0x494,0x495}, {0x496,0x497},
    {0x498,0x499}, {0x49a,0x49b}, {0x49c,0x49d}, {0x49e,0x49f}, {0x4a0,0x4a1}, {0x4a2,0x4a3},
    {0x4a4,0x4a5}, {0x4a6,0x4a7}, {0x4a8,0x4a9}, {0x4aa,0x4ab}, {0x4ac,0x4ad}, {0x4ae,0x4af},
    {0x4b0,0x4b1}, {0x4b2,0x4b3}, {0x4b4,0x4b5}, {0x4b6,0x4b7}, {0x4b8,0x4b9}, {0x4ba,0x4bb},
    {0x4bc,0x4bd}, {0x4be,0x4bf}, {0x4c0,0x4cf}, {0x4c1,0x4c2}, {0x4c3,0x4c4}, {0x4c5,0x4c6},
    {0x4c7,0x4c8}, {0x4c9,0x4ca}, {0x4cb,0x4cc}, {0x4cd,0x4ce}, {0x4d0,0x4d1}, {0x4d2,0x4d3},
    {0x4d4,0x4d5}, {0x4d6,0x4d7}, {0x4d8,0x4d9}, {0x4da,0x4db}, {0x4dc,0x4dd}, {0x4de,0x4df},
    {0x4e0,0x4e1}, {0x4e2,0x4e3}, {0x4e4,0x4e5}, {0x4e6,0x4e7}, {0x4e8,0x4e9}, {0x4ea,0x4eb},
    {0x4ec,0x4ed}, {0x4ee,0x4ef}, {0x4f0,0x4f1}, {0x4f2,0x4f3}, {0x4f4,0x4f5}, {0x4f6,0x4f7},
    {0x4f8,0x4f9}, {0x4fa,0x4fb}, {0x4fc,0x4fd}, {0x4fe,0x4ff}, {0x500,0x501}, {0x502,0x503},
    {0x504,0x505}, {0x506,0x507}, {0x508,0x509}, {0x50a,0x50b}, {0x50c,0x50d}, {0x50e,0x50f},
    {0x510,0x511}, {0x512,0x513}, {0x514,0x515}, {0x516,0x517}, {0x518,0x519}, {0x51a,0x51b},
    {0x51c,0x51d}, {0x51e,0x51f}, {0x520,0x521}, {0x522,0x523}, {0x524,0x525}, {0x526,0x527},
    {0x528,0x529}, {0x52a,0x52b}, {0x52c,0x52d}, {0x52e,0x52f}, {0x531,0x561}, {0x532,0x562},
    {0x533,0x563}, {0x534,0x564}, {0x535,0x565}, {0x536,0x566}, {0x537,0x567}, {0x538,0x568},
    {0x539,0x569}, {0x53a,0x56a}, {0x53b,0x56b}, {0x53c,0x56c}, {0x53d,0x56d}, {0x53e,0x56e},
    {0x53f,0x56f}, {0x540,0x570}, {0x541,0x571}, {0x542,0x572}, {0x543,0x573}, {0x544,0x574},
    {0x545,0x575}, {0x546,0x576}, {0x547,0x577}, {0x548,0x578}, {0x549,0x579}, {0x54a,0x57a},
    {0x54b,0x57b}, {0x54c,0x57c}, {0x54d,0x57d}, {0x54e,0x57e}, {0x54f,0x57f}, {0x550,0x580},
    {0x551,0x581}, {0x552,0x582}, {0x553,0x583}, {0x554,0x584}, {0x555,0x585}, {0x556,0x586},
    {0x10a0,0x2d00}, {0x10a1,0x2d01}, {0x10a2,0x2d02}, {0x10a3,0x2d03}, {0x10a4,0x2d04}, {0x10a5,0x2d05},
    {0x10a6,0x2d06}, {0x10a7,0x2d07}, {0x10a8,0x2d08}, {0x10a9,0x2d09}, {0x10aa,0x2d0a}, {0x10ab,0x2d0b},
    {0x10ac,0x2d0c}, {0x10ad,0x2d0d}, {0x10ae,0x2d0e}, {0x10af,0x2d0f}, {0x10b0,0x2d10}, {0x10b1,0x2d11},
    {0x10b2,0x2d12}, {0x10b3,0x2d13}, {0x10b4,0x2d14}, {0x10b5,0x2d15}, {0x10b6,0x2d16}, {0x10b7,0x2d17},
    {0x10b8,0x2d18}, {0x10b9,0x2d19}, {0x10ba,0x2d1a}, {0x10bb,0x2d1b}, {0x10bc,0x2d1c}, {0x10bd,0x2d1d},
    {0x10be,0x2d1e}, {0x10bf,0x2d1f}, {0x10c0,0x2d20}, {0x10c1,0x2d21}, {0x10c2,0x2d22}, {0x10c3,0x2d23},
    {0x10c4,0x2d24}, {0x10c5,0x2d25}, {0x10c7,0x2d27}, {0x10cd,0x2d2d}, {0x13a0,0xab70}, {0x13a1,0xab71},
    {0x13a2,0xab72}, {0x13a3,0xab73}, {0x13a4,0xab74}, {0x13a5,0xab75}, {0x13a6,0xab76}, {0x13a7,0xab77},
    {0x13a8,0xab78}, {0x13a9,0xab79}, {0x13aa,0xab7a}, {0x13ab,0xab7b}, {0x13ac,0xab7c}, {0x13ad,0xab7d},
    {0x13ae,0xab7e}, {0x13af,0xab7f}, {0x13b0,0xab80}, {0x13b1,0xab81}, {0x13b2,0xab82}, {0x13b3,0xab83},
    {0x13b4,0xab84}, {0x13b5,0xab85}, {0x13b6,0xab86}, {0x13b7,0xab87}, {0x13b8,0xab88}, {0x13b9,0xab89},
    {0x13ba,0xab8a}, {0x13bb,0xab8b}, {0x13bc,0xab8c}, {0x13bd,0xab8d}, {0x13be,0xab8e}, {0x13bf,0xab8f},
    {0x13c0,0xab90}, {0x13c1,0xab91}, {0x13c2,0xab92}, {0x13c3,0xab93}, {0x13c4,0xab94}, {0x13c5,0xab95},
    {0x13c6,0xab96}, {0x13c7,0xab97}, {0x13c8,0xab98}, {0x13c9,0xab99}, {0x13ca,0xab9a}, {0x13cb,0xab9b},
    {0x13cc,0xab9c}, {0x13cd,0xab9d}, {0x13ce,0xab9e}, {0x13cf,0xab9f}, {0x13d0,0xaba0}, {0x13d1,0xaba1},
    {0x13d2,0xaba2}, {0x13d3,0xaba3}, {0x13d4,0xaba4}, {0x13d5,0xaba5}, {0x13d6,0xaba6}, {0x13d7,0xaba7},
    {0x13d8,0xaba8}, {0x13d9,0xaba9}, {0x13da,0xabaa}, {0x13db,0xabab}, {0x13dc,0xabac}, {0x13dd,0xabad},
    {0x13de,0xabae}, {0x13df,0xabaf}, {0x13e0,0xabb0}, {0x13e1,0xabb1}, {0x13e2,0xabb2}, {0x13e3,0xabb3},
    {0x13e4,0xabb4}, {0x13e5,0xabb5}, {0x13e6,0xabb6}, {0x13e7,0xabb7}, {0x13e8,0xabb8}, {0x13e9,0xabb9},
    {0x13ea,0xabba}, {0x13eb,0xabbb}, {0x13ec,0xabbc}, {0x13ed,0xabbd}, {0x13ee,0xabbe}, {0x13ef,0xabbf},
    {0x13f0,0x13f8}, {0x13f1,0x13f9}, {0x13f2,0x13fa}, {0x13f3,0x13fb}, {0x13f4,0x13fc}, {0x13f5,0x13fd},
    {0x1c90,0x10d0}, {0x1c91,0x10d1}, {0x1c92,0x10d2}, {0x1c93,0x10d3}, {0x1c94,0x10d4}, {0x1c95,0x10d5},
    {0x1c96,0x10d6}, {0x1c97,0x10d7}, {0x1c98,0x10d8}, {0x1c99,0x10d9}, {0x1c9a,0x10da}, {0x1c9b,0x10db},
    {0x1c9c,0x10dc}, {0x1c9d,0x10dd}, {0x1c9e,0x10de}, {0x1c9f,0x10df}, {0x1ca0,0x10e0}, {0x1ca1,0x10e1},
    {0x1ca2,0x10e2}, {0x1ca3,0x10e3}, {0x1ca4,0x10e4}, {0x1ca5,0x10e5}, {0x1ca6,0x10e6}, {0x1ca7,0x10e7},
    {0x1ca8,0x10e8}, {0x1ca9,0x10e9}, {0x1caa,0x10ea}, {0x1cab,0x10eb}, {0x1cac,0x10ec}, {0x1cad,0x10ed},
    {0x1cae,0x10ee}, {0x1caf,0x10ef}, {0x1cb0,0x10f0}, {0x1cb1,0x10f1}, {0x1cb2,0x10f2}, {0x1cb3,0x10f3},
    {0x1cb4,0x10f4}, {0x1cb5,0x10f5}, {0x1cb6,0x10f6}, {0x1cb7,0x10f7}, {0x1cb8,0x10f8}, {0x1cb9,0x10f9},
    {0x1cba,0x10fa}, {0x1cbd,0x10fd}, {0x1cbe,0x10fe}, {0x1cbf,0x10ff}, {0x1e00,0x1e01}, {0x1e02,0x1e03},
    {0x1e04,0x1e05}, {0x1e06,0x1e07}, {0x1e08,0x1e09}, {0x1e0a,0x1e0b}, {0x1e0c,0x1e0d}, {0x1e0e,0x1e0f},
    {0x1e10,0x1e11}, {0x1e12,0x1e13}, {0x1e14,0x1e15}, {0x1e16,0x1e17}, {0x1e18,0x1e19}, {0x1e1a,0x1e1b},
    {0x1e1c,0x1e1d}, {0x1e1e,0x1e1f}, {0x1e20,0x1e21}, {0x1e22,0x1e23}, {0x1e24,0x1e25}, {0x1e26,0x1e27},
    {0x1e28,0x1e29}, {0x1e2a,0x1e2b}, {0x1e2c,0x1e2d}, {0x1e2e,0x1e2f}, {0x1e30,0x1e31}, {0x1e32,0x1e33},
    {0x1e34,0x1e35}, {0x1e36,0x1e37}, {0x1e38,0x1e39}, {0x1e3a,0x1e3b}, {0x1e3c,0x1e3d}, {0x1e3e,0x1e3f},
    {0x1e40,0x1e41}, {0x1e42,0x1e43}, {0x1e44,0x1e45}, {0x1e46,0x1e47}, {0x1e48,0x1e49}, {0x1e4a,0x1e4b},
    {0x1e4c,0x1e4d}, {0x1e4e,0x1e4f}, {0x1e50,0x1e51}, {0x1e52,0x1e53}, {0x1e54,0x1e55}, {0x1e56,0x1e57},
    {0x1e58,0x1e59}, {0x1e5a,0x1e5b}, {0x1e5c,0x1e5d}, {0x1e5e,0x1e5f}, {0x1e60,0x1e61}, {0x1e62,0x1e63},
    {0x1e64,0x1e65}, {0x1e66,0x1e67}, {0x1e68,0x1e69}, {0x1e6a,0x1e6b}, {0x1e6c,0x1e6d}, {0x1e6e,0x1e6f},
    {0x1e70,0x1e71}, {0x1e72,0x1e73}, {0x1e74,0x1e75}, {0x1e76,0x1e77}, {0x1e78,0x1e79}, {0x1e7a,0x1e7b},
    {0x1e7c,0x1e7d}, {0x1e7e,0x1e7f}, {0x1e80,0x1e81}, {0x1e82,0x1e83}, {0x1e84,0x1e85}, {0x1e86,0x1e87},
    {0x1e88,0x1e89}, {0x1e8a,0x1e8b}, {0x1e8c,0x1e8d}, {0x1e8e,0x1e8f}, {0x1e90,0x1e91}, {0x1e92,0x1e93},
    {0x1e94,0x1e95}, {0x1e9e,0xdf}, {0x1ea0,0x1ea1}, {0x1ea2,0x1ea3}, {0x1ea4,0x1ea5}, {0x1ea6,0x1ea7},
    {0x1ea8,0x1ea9}, {0x1eaa,0x1eab}, {0x1eac,0x1ead}, {0x1eae,0x1eaf}, {0x1eb0,0x1eb1}, {0x1eb2,0x1eb3},
    {0x1eb4,0x1eb5}, {0x1eb6,0x1eb7}, {0x1eb8,0x1eb9}, {0x1eba,0x1ebb}, {0x1ebc,0x1ebd}, {0x1ebe,0x1ebf},
    {0x1ec0,0x1ec1}, {0x1ec2,0x1ec3}, {0x1ec4,0x1ec5}, {0x1ec6,0x1ec7}, {0x1ec8,0x1ec9}, {0x1eca,0x1ecb},
    {0x1ecc,0x1ecd}, {0x1ece,0x1ecf}, {0x1ed0,0x1ed1}, {0x1ed2,0x1ed3}, {0x1ed4,0x1ed5}, {0x1ed6,0x1ed7},
    {0x1ed8,0x1ed9}, {0x1eda,0x1edb}, {0x1edc,0x1edd}, {0x1ede,0x1edf}, {0x1ee0,0x1ee1}, {0x1ee2,0x1ee3},
    {0x1ee4,0x1ee5}, {0x1ee6,0x1ee7}, {0x1ee8,0x1ee9}, {0x1eea,0x1eeb}, {0x1eec,0x1eed}, {0x1eee,0x1eef},
    {0x1ef0,0x1ef1}, {0x1ef2,0x1ef3}, {0x1ef4,0x1ef5}, {0x1ef6,0x1ef7}, {0x1ef8,0x1ef9}, {0x1efa,0x1efb},
    {0x1efc,0x1efd}, {0x1efe,0x1eff}, {0x1f08,0x1f00}, {0x1f09,0x1f01}, {0x1f0a,0x1f02}, {0x1f0b,0x1f03},
    {0x1f0c,0x1f04}, {0x1f0d,0x1f05}, {0x1f0e,0x1f06}, {0x1f0f,0x1f07}, {0x1f18,0x1f10}, {0x1f19,0x1f11},
    {0x1f1a,0x1f12}, {0x1f1b,0x1f13}, {0x1f1c,0x1f14}, {0x1f1d,0x1f15}, {0x1f28,0x1f20}, {0x1f29,0x1f21},
    {0x1f2a,0x1f22}, {0x1f2b,0x1f23}, {0x1f2c,0x1f24}, {0x1f2d,0x1f25}, {0x1f2e,0x1f26}, {0x1f2f,0x1f27},
    {0x1f38,0x1f30}, {0x1f39,0x1f31}, {0x1f3a,0x1f32}, {0x1f3b,0x1f33}, {0x1f3c,0x1f34}, {0x1f3d,0x1f35},
    {0x1f3e,0x1f36}, {0x1f3f,0x1f37}, {0x1f48,0x1f40}, {0x1f49,0x1f41}, {0x1f4a,0x1f42}, {0x1f4b,0x1f43},
    {0x1f4c,0x1f44}, {0x1f4d,0x1f45}, {0x1f59,0x1f51}, {0x1f5b,0x1f53}, {0x1f5d,0x1f55}, {0x1f5f,0x1f57},
    {0x1f68,0x1f60}, {0x1f69,0x1f61}, {0x1f6a,0x1f62}, {0x1f6b,0x1f63}, {0x1f6c,0x1f64}, {0x1f6d,0x1f65},
    {0x1f6e,0x1f66}, {0x1f6f,0x1f67}, {0x1f88,0x1f80}, {0x1f89,0x1f81}, {0x1f8a,0x1f82}, {0x1f8b,0x1f83},
    {0x1f8c,0x1f84}, {0x1f8d,0x1f85}, {0x1f8e,0x1f86}, {0x1f8f,0x1f87}, {0x1f98,0x1f90}, {0x1f99,0x1f91},
    {0x1f9a,0x1f92}, {0x1f9b,0x1f93}, {0x1f9c,0x1f94}, {0x1f9d,0x1f95}, {0x1f9e,0x1f96}, {0x1f9f,0x1f97},
    {0x1fa8,0x1fa0}, {0x1fa9,0x1fa1}, {0x1faa,0x1fa2}, {0x1fab,0x1fa3}, {0x1fac,0x1fa4}, {0x1fad,0x1fa5},
    {0x1fae,0x1fa6}, {0x1faf,0x1fa7}, {0x1fb8,0x1fb0}, {0x1fb9,0x1fb1}, {0x1fba,0x1f70}, {0x1fbb,0x1f71},
    {0x1fbc,0x1fb3}, {0x1fc8,0x1f72}, {0x1fc9,0x1f73}, {0x1fca,0x1f74}, {0x1fcb,0x1f75}, {0x1fcc,0x1fc3},
    {0x1fd8,0x1fd0}, {0x1fd9,0x1fd1}, {0x1fda,0x1f76}, {0x1fdb,0x1f77}, {0x1fe8,0x1fe0}, {0x1fe9,0x1fe1},
    {0x1fea,0x1f7a}, {0x1feb,0x1f7b}, {0x1fec,0x1fe5}, {0x1ff8,0x1f78}, {0x1ff9,0x1f79}, {0x1ffa,0x1f7c},
    {0x1ffb,0x1f7d}, {0x1ffc,0x1ff3}, {0x2126,0x3c9}, {0x212a,0x6b}, {0x212b,0xe5}, {0x2132,0x214e},
    {0x2160,0x2170}, {0x2161,0x2171}, {0x2162,0x2172}, {0x2163,0x2173}, {0x2164,0x2174}, {0x2165,0x2175},
    {0x2166,0x2176}, {0x2167,0x2177}, {0x2168,0x2178}, {0x2169,0x2179}, {0x216a,0x217a}, {0x216b,0x217b},
    {0x216c,0x217c}, {0x216d,0x217d}, {0x216e,0x217e}, {0x216f,0x217f}, {0x2183,0x2184}, {0x24b6,0x24d0},
    {0x24b7,0x24d1}, {0x24b8,0x24d2}, {0x24b9,0x24d3}, {0x24ba,0x24d4}, {0x24bb,0x24d5}, {0x24bc,0x24d6},
    {0x24bd,0x24d7}, {0x24be,0x24d8}, {0x24bf,0x24d9}, {0x24c0,0x24da}, {0x24c1,0x24db}, {0x24c2,0x24dc},
    {0x24c3,0x24dd}, {0x24c4,0x24de}, {0x24c5,0x24df}, {0x24c6,0x24e0}, {0x24c7,0x24e1}, {0x24c8,0x24e2},
    {0x24c9,0x24e3}, {0x24ca,0x24e4}, {0x24cb,0x24e5}, {0x24cc,0x24e6}, {0x24cd,0x24e7}, {0x24ce,0x24e8},
    {0x24cf,0x24e9}, {0x2c00,0x2c30}, {0x2c01,0x2c31}, {0x2c02,0x2c32}, {0x2c03,0x2c33}, {0x2c04,0x2c34},
    {0x2c05,0x2c35}, {0x2c06,0x2c36}, {0x2c07,0x2c37}, {0x2c08,0x2c38}, {0x2c09,0x2c39}, {0x2c0a,0x2c3a},
    {0x2c0b,0x2c3b}, {0x2c0c,0x2c3c}, {0x2c0d,0x2c3d}, {0x2c0e,0x2c3e}, {0x2c0f,0x2c3f}, {0x2c10,0x2c40},
    {0x2c11,0x2c41}, {0x2c12,0x2c42}, {0x2c13,0x2c43}, {0x2c14,0x2c44}, {0x2c15,0x2c45}, {0x2c16,0x2c46},
    {0x2c17,0x2c47}, {0x2c18,0x2c48}, {0x2c19,0x2c49}, {0x2c1a,0x2c4a}, {0x2c1b,0x2c4b}, {0x2c1c,0x2c4c},
    {0x2c1d,0x2c4d}, {0x2c1e,0x2c4e}, {0x2c1f,0x2c4f}, {0x2c20,0x2c50}, {0x2c21,0x2c51}, {0x2c22,0x2c52},
    {0x2c23,0x2c53}, {0x2c24,0x2c54}, {0x2c25,0x2c55}, {0x2c26,0x2c56}, {0x2c27,0x2c57}, {0x2c28,0x2c58},
    {0x2c29,0x2c59}, {0x2c2a,0x2c5a}, {0x2c2b,0x2c5b}, {0x2c2c,0x2c5c}, {0x2c2d,0x2c5d}, {0x2c2e,0x2c5e},
    {0x2c60,0x2c61}, {0x2c62,0x26b}, {0x2c63,0x1d7d}, {0x2c64,0x27d}, {0x2c67,0x2c68}, {0x2c69,0x2c6a},
    {0x2c6b,0x2c6c}, {0x2c6d,0x251}, {0x2c6e,0x271}, {0x2c6f,0x250}, {0x2c70,0x252}, {0x2c72,0x2c73},
    {0x2c75,0x2c76}, {0x2c7e,0x23f}, {0x2c7f,0x240}, {0x2c80,0x2c81}, {0x2c82,0x2c83}, {0x2c84,0x2c85},
    {0x2c86,0x2c87}, {0x2c88,0x2c89}, {0x2c8a,0x2c8b}, {0x2c8c,0x2c8d}, {0x2c8e,0x2c8f}, {0x2c90,0x2c91},
    {0x2c92,0x2c93}, {0x2c94,0x2c95}, {0x2c96,0x2c97}, {0x2c98,0x2c99}, {0x2c9a,0x2c9b}, {0x2c9c,0x2c9d},
    {0x2c9e,0x2c9f}, {0x2ca0,0x2ca1}, {0x2ca2,0x2ca3}, {0x2ca4,0x2ca5}, {0x2ca6,0x2ca7}, {0x2ca8,0x2ca9},
    {0x2caa,0x2cab}, {0x2cac,0x2cad}, {0x2cae,0x2caf}, {0x2cb0,0x2cb1}, {0x2cb2,0x2cb3}, {0x2cb4,0x2cb5},
    {0x2cb6,0x2cb7}, {0x2cb8,0x2cb9}, {0x2cba,0x2cbb}, {0x2cbc,0x2cbd}, {0x2cbe,0x2cbf}, {0x2cc0,0x2cc1},
    {0x2cc2,0x2cc3}, {0x2cc4,0x2cc5}, {0x2cc6,0x2cc7}, {0x2cc8,0x2cc9}, {0x2cca,0x2ccb}, {0x2ccc,0x2ccd},
    {0x2cce,0x2ccf}, {0x2cd0,0x2cd1}, {0x2cd2,0x2cd3}, {0x2cd4,0x2cd5}, {0x2cd6,0x2cd7}, {0x2cd8,0x2cd9},
    {0x2cda,0x2cdb}, {0x2cdc,0x2cdd}, {0x2cde,0x2cdf}, {0x2ce0,0x2ce1}, {0x2ce2,0x2ce3}, {0x2ceb,0x2cec},
    {0x2ced,0x2cee}, {0x2cf2,0x2cf3}, {0xa640,0xa641}, {0xa642,0xa643}, {0xa644,0xa645}, {0xa646,0xa647},
    {0xa648,0xa649}, {0xa64a,0xa64b}, {0xa64c,0xa64d}, {0xa64e,0xa64f}, {0xa650,0xa651}, {0xa652,0xa653},
    {0xa654,0xa655}, {0xa656,0xa657}, {0xa658,0xa659}, {0xa65a,0xa65b}, {0xa65c,0xa65d}, {0xa65e,0xa65f},
    {0xa660,0xa661}, {0xa662,0xa663}, {0xa664,0xa665}, {0xa666,0xa667}, {0xa668,0xa669}, {0xa66a,0xa66b},
    {0xa66c,0xa66d}, {0xa680,0xa681}, {0xa682,0xa683}, {0xa684,0xa685}, {0xa686,0xa687}, {0xa688,0xa689},
    {0xa68a,0xa68b}, {0xa68c,0xa68d}, {0xa68e,0xa68f}, {0xa690,0xa691}, {0xa692,0xa693}, {0xa694,0xa695},
    {0xa696,0xa697}, {0xa698,0xa699}, {0xa69a,0xa69b}, {0xa722,0xa723}, {0xa724,0xa725}, {0xa726,0xa727},
    {0xa728,0xa729}, {0xa72a,0xa72b}, {0xa72c,0xa72d}, {0xa72e,0xa72f}, {0xa732,0xa733}, {0xa734,0xa735},
    {0xa736,0xa737}, {0xa738,0xa739}, {0xa73a,0xa73b}, {0xa73c,0xa73d}, {0xa73e,0xa73f}, {0xa740,0xa741},
    {0xa742,0xa743}, {0xa744,0xa745}, {0xa746,0xa747}, {0xa748,0xa749}, {0xa74a,0xa74b}, {0xa74c,0xa74d},
    {0xa74e,0xa74f}, {0xa750,0xa751}, {0xa752,0xa753}, {0xa754,0xa755}, {0xa756,0xa757}, {0xa758,0xa759},
    {0xa75a,0xa75b}, {0xa75c,0xa75d}, {0xa75e,0xa75f}, {0xa760,0xa761}, {0xa762,0xa763}, {0xa764,0xa765},
    {0xa766,0xa767}, {0xa768,0xa769}, {0xa76a,0xa76b}, {0xa76c,0xa76d}, {0xa76e,0xa76f}, {0xa779,0xa77a},
    {0xa77b,0xa77c}, {0xa77d,0x1d79}, {0xa77e,0xa77f}, {0xa780,0xa781}, {0xa782,0xa783}, {0xa784,0xa785},
    {0xa786,0xa787}, {0xa78b,0xa78c}, {0xa78d,0x265}, {0xa790,0xa791}, {0xa792,0xa793}, {0xa796,0xa797},
    {0xa798,0xa799}, {0xa79a,0xa79b}, {0xa79c,0xa79d}, {0xa79e,0xa79f}, {0xa7a0,0xa7a1}, {0xa7a2,0xa7a3},
    {0xa7a4,0xa7a5}, {0xa7a6,0xa7a7}, {0xa7a8,0xa7a9}, {0xa7aa,0x266}, {0xa7ab,0x25c}, {0xa7ac,0x261},
    {0xa7ad,0x26c}, {0xa7ae,0x26a}, {0xa7b0,0x29e}, {0xa7b1,0x287}, {0xa7b2,0x29d}, {0xa7b3,0xab53},
    {0xa7b4,0xa7b5}, {0xa7b6,0xa7b7}, {0xa7b8,0xa7b9}, {0xa7ba,0xa7bb}, {0xa7bc,0xa7bd}, {0xa7be,0xa7bf},
    {0xa7c2,0xa7c3}, {0xa7c4,0xa794}, {0xa7c5,0x282}, {0xa7c6,0x1d8e}, {0xa7c7,0xa7c8}, {0xa7c9,0xa7ca},
    {0xa7f5,0xa7f6}, {0xff21,0xff41}, {0xff22,0xff42}, {0xff23,0xff43}, {0xff24,0xff44}, {0xff25,0xff45},
    {0xff26,0xff46}, {0xff27,0xff47}, {0xff28,0xff48}, {0xff29,0xff49}, {0xff2a,0xff4a}, {0xff2b,0xff4b},
    {0xff2c,0xff4c}, {0xff2d,0xff4d}, {0xff2e,0xff4e}, {0xff2f,0xff4f}, {0xff30,0xff50}, {0xff31,0xff51},
    {0xff32,0xff52}, {0xff33,0xff53}, {0xff34,0xff54}, {0xff35,0xff55}, {0xff36,0xff56}, {0xff37,0xff57},
    {0xff38,0xff58}, {0xff39,0xff59}, {0xff3a,0xff5a}, {0x10400,0x10428}, {0x10401,0x10429}, {0x10402,0x1042a},
    {0x10403,0x1042b}, {0x10404,0x1042c}, {0x10405,0x1042d}, {0x10406,0x1042e}, {0x10407,0x1042f}, {0x10408,0x10430},
    {0x10409,0x10431}, {0x1040a,0x10432}, {0x1040b,0x10433}, {0x1040c,0x10434}, {0x1040d,0x10435}, {0x1040e,0x10436},
    {0x1040f,0x10437}, {0x10410,0x10438}, {0x10411,0x10439}, {0x10412,0x1043a}, {0x10413,0x1043b}, {0x10414,0x1043c},
    {0x10415,0x1043d}, {0x10416,0x1043e}, {0x10417,0x1043f}, {0x10418,0x10440}, {0x10419,0x10441}, {0x1041a,0x10442},
    {0x1041b,0x10443}, {0x1041c,0x10444}, {0x1041d,0x10445}, {0x1041e,0x10446}, {0x1041f,0x10447}, {0x10420,0x10448},
    {0x10421,0x10449}, {0x10422,0x1044a}, {0x10423,0x1044b}, {0x10424,0x1044c}, {0x10425,0x1044d}, {0x10426,0x1044e},
    {0x10427,0x1044f}, {0x104b0,0x104d8}, {0x104b1,0x104d9}, {0x104b2,0x104da}, {0x104b3,0x104db}, {0x104b4,0x104dc},
    {0x104b5,0x104dd}, {0x104b6,0x104de}, {0x104b7,0x104df}, {0x104b8,0x104e0}, {0x104b9,0x104e1}, {0x104ba,0x104e2},
    {0x104bb,0x104e3}, {0x104bc,0x104e4}, {0x104bd,0x104e5}, {0x104be,0x104e6}, {0x104bf,0x104e7}, {0x104c0,0x104e8},
    {0x104c1,0x104e9}, {0x104c2,0x104ea}, {0x104c3,0x104eb}, {0x104c4,0x104ec}, {0x104c5,0x104ed}, {0x104c6,0x104ee},
    {0x104c7,0x104ef}, {0x104c8,0x104f0}, {0x104c9,0x104f1}, {0x104ca,0x104f2}, {0x104cb,0x104f3}, {0x104cc,0x104f4},
    {0x104cd,0x104f5}, {0x104ce,0x104f6}, {0x104cf,0x104f7}, {0x104d0,0x104f8}, {0x104d1,0x104f9}, {0x104d2,0x104fa},
    {0x104d3,0x104fb}, {0x10c80,0x10cc0}, {0x10c81,0x10cc1}, {0x10c82,0x10cc2}, {0x10c83,0x10cc3}, {0x10c84,0x10cc4},
    {0x10c85,0x10cc5}, {0x10c86,0x10cc6}, {0x10c87,0x10cc7}, {0x10c88,0x10cc8}, {0x10c89,0x10cc9}, {0x10c8a,0x10cca},
    {0x10c8b,0x10ccb}, {0x10c8c,0x10ccc}, {0x10c8d,0x10ccd}, {0x10c8e,0x10cce}, {0x10c8f,0x10ccf}, {0x10c90,0x10cd0},
    {0x10c91,0x10cd1}, {0x10c92,0x10cd2}, {0x10c93,0x10cd3}, {0x10c94,0x10cd4}, {0x10c95,0x10cd5}, {0x10c96,0x10cd6},
    {0x10c97,0x10cd7}, {0x10c98,0x10cd8}, {0x10c99,0x10cd9}, {0x10c9a,0x10cda}, {0x10c9b,0x10cdb}, {0x10c9c,0x10cdc},
    {0x10c9d,0x10cdd}, {0x10c9e,0x10cde}, {0x10c9f,0x10cdf}, {0x10ca0,0x10ce0}, {0x10ca1,0x10ce1}, {0x10ca2,0x10ce2},
    {0x10ca3,0x10ce3}, {0x10ca4,0x10ce4}, {0x10ca5,0x10ce5}, {0x10ca6,0x10ce6}, {0x10ca7,0x10ce7}, {0x10ca8,0x10ce8},
    {0x10ca9,0x10ce9}, {0x10caa,0x10cea}, {0x10cab,0x10ceb}, {0x10cac,0x10cec}, {0x10cad,0x10ced}, {0x10cae,0x10cee},
    {0x10caf,0x10cef}, {0x10cb0,0x10cf0}, {0x10cb1,0x10cf1}, {0x10cb2,0x10cf2}, {0x118a0,0x118c0}, {0x118a1,0x118c1},
    {0x118a2,0x118c2}, {0x118a3,0x118c3}, {0x118a4,0x118c4}, {0x118a5,0x118c5}, {0x118a6,0x118c6}, {0x118a7,0x118c7},
    {0x118a8,0x118c8}, {0x118a9,0x118c9}, {0x118aa,0x118ca}, {0x118ab,0x118cb}, {0x118ac,0x118cc}, {0x118ad,0x118cd},
    {0x118ae,0x118ce}, {0x118af,0x118cf}, {0x118b0,0x118d0}, {0x118b1,0x118d1}, {0x118b2,0x118d2}, {0x118b3,0x118d3},
    {0x118b4,0x118d4}, {0x118b5,0x118d5}, {0x118b6,0x118d6}, {0x118b7,0x118d7}, {0x118b8,0x118d8}, {0x118b9,0x118d9},
    {0x118ba,0x118da}, {0x118bb,0x118db}, {0x118bc,0x118dc}, {0x118bd,0x118dd}, {0x118be,0x118de}, {0x118bf,0x118df},
    {0x16e40,0x16e60}, {0x16e41,0x16e61}, {0x16e42,0x16e62}, {0x16e43,0x16e63}, {0x16e44,0x16e64}, {0x16e45,0x16e65},
    {0x16e46,0x16e66}, {0x16e47,0x16e67}, {0x16e48,0x16e68}, {0x16e49,0x16e69}, {0x16e4a,0x16e6a}, {0x16e4b,0x16e6b},
    {0x16e4c,0x16e6c}, {0x16e4d,0x16e6d}, {0x16e4e,0x16e6e}, {0x16e4f,0x16e6f}, {0x16e50,0x16e70}, {0x16e51,0x16e71},
    {0x16e52,0x16e72}, {0x16e53,0x16e73}, {0x16e54,0x16e74}, {0x16e55,0x16e75}, {0x16e56,0x16e76}, {0x16e57,0x16e77},
    {0x16e58,0x16e78}, {0x16e59,0x16e79}, {0x16e5a,0x16e7a}, {0x16e5b,0x16e7b}, {0x16e5c,0x16e7c}, {0x16e5d,0x16e7d},
    {0x16e5e,0x16e7e}, {0x16e5f,0x16e7f}, {0x1e900,0x1e922}, {0x1e901,0x1e923}, {0x1e902,0x1e924}, {0x1e903,0x1e925},
    {0x1e904,0x1e926}, {0x1e905,0x1e927}, {0x1e906,0x1e928}, {0x1e907,0x1e929}, {0x1e908,0x1e92a}, {0x1e909,0x1e92b},
    {0x1e90a,0x1e92c}, {0x1e90b,0x1e92d}, {0x1e90c,0x1e92e}, {0x1e90d,0x1e92f}, {0x1e90e,0x1e930}, {0x1e90f,0x1e931},
    {0x1e910,0x1e932}, {0x1e911,0x1e933}, {0x1e912,0x1e934}, {0x1e913,0x1e935}, {0x1e914,0x1e936}, {0x1e915,0x1e937},
    {0x1e916,0x1e938}, {0x1e917,0x1e939}, {0x1e918,0x1e93a}, {0x1e919,0x1e93b}, {0x1e91a,0x1e93c}, {0x1e91b,0x1e93d},
    {0x1e91c,0x1e93e}, {0x1e91d,0x1e93f}, {0x1e91e,0x1e940}, {0x1e91f,0x1e941}, {0x1e920,0x1e942}, {0x1e921,0x1e943},
};
const std::size_t kFoldPairCount = 1392;

const CccEntry kCccEntries[] = {
    {0x300,230}, {0x301,230}, {0x302,230}, {0x303,230}, {0x304,230}, {0x305,230},
    {0x306,230}, {0x307,230}, {0x308,230}, {0x309,230}, {0x30a,230}, {0x30b,230},
    {0x30c,230}, {0x30d,230}, {0x30e,230}, {0x30f,230}, {0x310,230}, {0x311,230},
    {0x312,230}, {0x313,230}, {0x314,230}, {0x315,232}, {0x316,220}, {0x317,220},
    {0x318,220}, {0x319,220}, {0x31a,232}, {0x31b,216}, {0x31c,220}, {0x31d,220},
    {0x31e,220}, {0x31f,220}, {0x320,220}, {0x321,202}, {0x322,202}, {0x323,220},
    {0x324,220}, {0x325,220}, {0x326,220}, {0x327,202}, {0x328,202}, {0x329,220},
    {0x32a,220}, {0x32b,220}, {0x32c,220}, {0x32d,220}, {0x32e,220}, {0x32f,220},
    {0x330,220}, {0x331,220}, {0x332,220}, {0x333,220}, {0x334,1}, {0x335,1},
    {0x336,1}, {0x337,1}, {0x338,1}, {0x339,220}, {0x33a,220}, {0x33b,220},
    {0x33c,220}, {0x33d,230}, {0x33e,230}, {0x33f,230}, {0x340,230}, {0x341,230},
    {0x342,230}, {0x343,230}, {0x344,230}, {0x345,240}, {0x346,230}, {0x347,220},
    {0x348,220}, {0x349,220}, {0x34a,230}, {0x34b,230}, {0x34c,230}, {0x34d,220},
    {0x34e,220}, {0x350,230}, {0x351,230}, {0x352,230}, {0x353,220}, {0x354,220},
    {0x355,220}, {0x356,220}, {0x357,230}, {0x358,232}, {0x359,220}, {0x35a,220},
    {0x35b,230}, {0x35c,233}, {0x35d,234}, {0x35e,234}, {0x35f,233}, {0x360,234},
    {0x361,234}, {0x362,233}, {0x363,230}, {0x364,230}, {0x365,230}, {0x366,230},
    {0x367,230}, {0x368,230}, {0x369,230}, {0x36a,230}, {0x36b,230}, {0x36c,230},
    {0x36d,230}, {0x36e,230}, {0x36f,230}, {0x483,230}, {0x484,230}, {0x485,230},
    {0x486,230}, {0x487,230}, {0x591,220}, {0x592,230}, {0x593,230}, {0x594,230},
    {0x595,230}, {0x596,220}, {0x597,230}, {0x598,230}, {0x599,230}, {0x59a,222},
    {0x59b,220}, {0x59c,230}, {0x59d,230}, {0x59e,230}, {0x59f,230}, {0x5a0,230},
    {0x5a1,230}, {0x5a2,220}, {0x5a3,220}, {0x5a4,220}, {0x5a5,220}, {0x5a6,220},
    {0x5a7,220}, {0x5a8,230}, {0x5a9,230}, {0x5aa,220}, {0x5ab,230}, {0x5ac,230},
    {0x5ad,222}, {0x5ae,228}, {0x5af,230}, {0x5b0,10}, {0x5b1,11}, {0x5b2,12},
    {0x5b3,13}, {0x5b4,14}, {0x5b5,15}, {0x5b6,16}, {0x5b7,17}, {0x5b8,18},
    {0x5b9,19}, {0x5ba,19}, {0x5bb,20}, {0x5bc,21}, {0x5bd,22}, {0x5bf,23},
    {0x5c1,24}, {0x5c2,25}, {0x5c4,230}, {0x5c5,220}, {0x5c7,18}, {0x610,230},
    {0x611,230}, {0x612,230}, {0x613,230}, {0x614,230}, {0x615,230}, {0x616,230},
    {0x617,230}, {0x618,30}, {0x619,31}, {0x61a,32}, {0x64b,27}, {0x64c,28},
    {0x64d,29}, {0x64e,30}, {0x64f,31}, {0x650,32}, {0x651,33}, {0x652,34},
    {0x653,230}, {0x654,230}, {0x655,220}, {0x656,220}, {0x657,230}, {0x658,230},
    {0x659,230}, {0x65a,230}, {0x65b,230}, {0x65c,220}, {0x65d,230}, {0x65e,230},
    {0x65f,220}, {0x670,35}, {0x6d6,230}, {0x6d7,230}, {0x6d8,230}, {0x6d9,230},
    {0x6da,230}, {0x6db,230}, {0x6dc,230}, {0x6df,230}, {0x6e0,230}, {0x6e1,230},
    {0x6e2,230}, {0x6e3,220}, {0x6e4,230}, {0x6e7,230}, {0x6e8,230}, {0x6ea,220},
    {0x6eb,230}, {0x6ec,230}, {0x6ed,220}, {0x711,36}, {0x730,230}, {0x731,220},
    {0x732,230}, {0x733,230}, {0x734,220}, {0x735,230}, {0x736,230}, {0x737,220},
    {0x738,220}, {0x739,220}, {0x73a,230}, {0x73b,220}, {0x73c,220}, {0x73d,230},
    {0x73e,220}, {0x73f,230}, {0x740,230}, {0x741,230}, {0x742,220}, {0x743,230},
    {0x744,220}, {0x745,230}, {0x746,220}, {0x747,230}, {0x748,220}, {0x749,230},
    {0x74a,230}, {0x7eb,230}, {0x7ec,230}, {0x7ed,230}, {0x7ee,230}, {0x7ef,230},
    {0x7f0,230}, {0x7f1,230}, {0x7f2,220}, {0x7f3,230}, {0x7fd,220}, {0x816,230},
    {0x817,230}, {0x818,230}, {0x819,230}, {0x81b,230}, {0x81c,230}, {0x81d,230},
    {0x81e,230}, {0x81f,230}, {0x820,230}, {0x821,230}, {0x822,230}, {0x823,230},
    {0x825,230}, {0x826,230}, {0x827,230}, {0x829,230}, {0x82a,230}, {0x82b,230},
    {0x82c,230}, {0x82d,230}, {0x859,220}, {0x85a,220}, {0x85b,220}, {0x8d3,220},
    {0x8d4,230}, {0x8d5,230}, {0x8d6,230}, {0x8d7,230}, {0x8d8,230}, {0x8d9,230},
    {0x8da,230}, {0x8db,230}, {0x8dc,230}, {0x8dd,230}, {0x8de,230}, {0x8df,230},
    {0x8e0,230}, {0x8e1,230}, {0x8e3,220}, {0x8e4,230}, {0x8e5,230}, {0x8e6,220},
    {0x8e7,230}, {0x8e8,230}, {0x8e9,220}, {0x8ea,230}, {0x8eb,230}, {0x8ec,230},
    {0x8ed,220}, {0x8ee,220}, {0x8ef,220}, {0x8f0,27}, {0x8f1,28}, {0x8f2,29},
    {0x8f3,230}, {0x8f4,230}, {0x8f5,230}, {0x8f6,220}, {0x8f7,230}, {0x8f8,230},
    {0x8f9,220}, {0x8fa,220}, {0x8fb,230}, {0x8fc,230}, {0x8fd,230}, {0x8fe,230},
    {0x8ff,230}, {0x93c,7}, {0x94d,9}, {0x951,230}, {0x952,220}, {0x953,230},
    {0x954,230}, {0x9bc,7}, {0x9cd,9}, {0x9fe,230}, {0xa3c,7}, {0xa4d,9},
    {0xabc,7}, {0xacd,9}, {0xb3c,7}, {0xb4d,9}, {0xbcd,9}, {0xc4d,9},
    {0xc55,84}, {0xc56,91}, {0xcbc,7}, {0xccd,9}, {0xd3b,9}, {0xd3c,9},
    {0xd4d,9}, {0xdca,9}, {0xe38,103}, {0xe39,103}, {0xe3a,9}, {0xe48,107},
    {0xe49,107}, {0xe4a,107}, {0xe4b,107}, {0xeb8,118}, {0xeb9,118}, {0xeba,9},
    {0xec8,122}, {0xec9,122}, {0xeca,122}, {0xecb,122}, {0xf18,220}, {0xf19,220},
    {0xf35,220}, {0xf37,220}, {0xf39,216}, {0xf71,129}, {0xf72,130}, {0xf74,132},
    {0xf7a,130}, {0xf7b,130}, {0xf7c,130}, {0xf7d,130}, {0xf80,130}, {0xf82,230},
    {0xf83,230}, {0xf84,9}, {0xf86,230}, {0xf87,230}, {0xfc6,220}, {0x1037,7},
    {0x1039,9}, {0x103a,9}, {0x108d,220}, {0x135d,230}, {0x135e,230}, {0x135f,230},
    {0x1714,9}, {0x1734,9}, {0x17d2,9}, {0x17dd,230}, {0x18a9,228}, {0x1939,222},
    {0x193a,230}, {0x193b,220}, {0x1a17,230}, {0x1a18,220}, {0x1a60,9}, {0x1a75,230},
    {0x1a76,230}, {0x1a77,230}, {0x1a78,230}, {0x1a79,230}, {0x1a7a,230}, {0x1a7b,230},
    {0x1a7c,230}, {0x1a7f,220}, {0x1ab0,230}, {0x1ab1,230}, {0x1ab2,230}, {0x1ab3,230},
    {0x1ab4,230}, {0x1ab5,220}, {0x1ab6,220}, {0x1ab7,220}, {0x1ab8,220}, {0x1ab9,220},
    {0x1aba,220}, {0x1abb,230}, {0x1abc,230}, {0x1abd,220}, {0x1abf,220}, {0x1ac0,220},
    {0x1b34,7}, {0x1b44,9}, {0x1b6b,230}, {0x1b6c,220}, {0x1b6d,230}, {0x1b6e,230},
    {0x1b6f,230}, {0x1b70,230}, {0x1b71,230}, {0x1b72,230}, {0x1b73,230}, {0x1baa,9},
    {0x1bab,9}, {0x1be6,7}, {0x1bf2,9}, {0x1bf3,9}, {0x1c37,7}, {0x1cd0,230},
    {0x1cd1,230}, {0x1cd2,230}, {0x1cd4,1}, {0x1cd5,220}, {0x1cd6,220}, {0x1cd7,220},
    {0x1cd8,220}, {0x1cd9,220}, {0x1cda,230}, {0x1cdb,230}, {0x1cdc,220}, {0x1cdd,220},
    {0x1cde,220}, {0x1cdf,220}, {0x1ce0,230}, {0x1ce2,1}, {0x1ce3,1}, {0x1ce4,1},
    {0x1ce5,1}, {0x1ce6,1}, {0x1ce7,1}, {0x1ce8,1}, {0x1ced,220}, {0x1cf4,230},
    {0x1cf8,230}, {0x1cf9,230}, {0x1dc0,230}, {0x1dc1,230}, {0x1dc2,220}, {0x1dc3,230},
    {0x1dc4,230}, {0x1dc5,230}, {0x1dc6,230}, {0x1dc7,230}, {0x1dc8,230}, {0x1dc9,230},
    {0x1dca,220}, {0x1dcb,230}, {0x1dcc,230}, {0x1dcd,234}, {0x1dce,214}, {0x1dcf,220},
    {0x1dd0,202}, {0x1dd1,230}, {0x1dd2,230}, {0x1dd3,230}, {0x1dd4,230}, {0x1dd5,230},
    {0x1dd6,230}, {0x1dd7,230}, {0x1dd8,230}, {0x1dd9,230}, {0x1dda,230}, {0x1ddb,230},
    {0x1ddc,230}, {0x1ddd,230}, {0x1dde,230}, {0x1ddf,230}, {0x1de0,230}, {0x1de1,230},
    {0x1de2,230}, {0x1de3,230}, {0x1de4,230}, {0x1de5,230}, {0x1de6,230}, {0x1de7,230},
    {0x1de8,230}, {0x1de9,230}, {0x1dea,230}, {0x1deb,230}, {0x1dec,230}, {0x1ded,230},
    {0x1dee,230}, {0x1def,230}, {0x1df0,230}, {0x1df1,230}, {0x1df2,230}, {0x1df3,230},
    {0x1df4,230}, {0x1df5,230}, {0x1df6,232}, {0x1df7,228}, {0x1df8,228}, {0x1df9,220},
    {0x1dfb,230}, {0x1dfc,233}, {0x1dfd,220}, {0x1dfe,230}, {0x1dff,220}, {0x20d0,230},
    {0x20d1,230}, {0x20d2,1}, {0x20d3,1}, {0x20d4,230}, {0x20d5,230}, {0x20d6,230},
    {0x20d7,230}, {0x20d8,1}, {0x20d9,1}, {0x20da,1}, {0x20db,230}, {0x20dc,230},
    {0x20e1,230}, {0x20e5,1}, {0x20e6,1}, {0x20e7,230}, {0x20e8,220}, {0x20e9,230},
    {0x20ea,1}, {0x20eb,1}, {0x20ec,220}, {0x20ed,220}, {0x20ee,220}, {0x20ef,220},
    {0x20f0,230}, {0x2cef,230}, {0x2cf0,230}, {0x2cf1,230}, {0x2d7f,9}, {0x2de0,230},
    {0x2de1,230}, {0x2de2,230}, {0x2de3,230}, {0x2de4,230}, {0x2de5,230}, {0x2de6,230},
    {0x2de7,230}, {0x2de8,230}, {0x2de9,230}, {0x2dea,230}, {0x2deb,230}, {0x2dec,230},
    {0x2ded,230}, {0x2dee,230}, {0x2def,230}, {0x2df0,230}, {0x2df1,230}, {0x2df2,230},
    {0x2df3,230}, {0x2df4,230}, {0x2df5,230}, {0x2df6,230}, {0x2df7,230}, {0x2df8,230},
    {0x2df9,230}, {0x2dfa,230}, {0x2dfb,230}, {0x2dfc,230}, {0x2dfd,230}, {0x2dfe,230},
    {0x2dff,230}, {0x302a,218}, {0x302b,228}, {0x302c,232}, {0x302d,222}, {0x302e,224},
    {0x302f,224}, {0x3099,8}, {0x309a,8}, {0xa66f,230}, {0xa674,230}, {0xa675,230},
    {0xa676,230}, {0xa677,230}, {0xa678,230}, {0xa679,230}, {0xa67a,230}, {0xa67b,230},
    {0xa67c,230}, {0xa67d,230}, {0xa69e,230}, {0xa69f,230}, {0xa6f0,230}, {0xa6f1,230},
    {0xa806,9}, {0xa82c,9}, {0xa8c4,9}, {0xa8e0,230}, {0xa8e1,230}, {0xa8e2,230},
    {0xa8e3,230}, {0xa8e4,230}, {0xa8e5,230}, {0xa8e6,230}, {0xa8e7,230}, {0xa8e8,230},
    {0xa8e9,230}, {0xa8ea,230}, {0xa8eb,230}, {0xa8ec,230}, {0xa8ed,230}, {0xa8ee,230},
    {0xa8ef,230}, {0xa8f0,230}, {0xa8f1,230}, {0xa92b,220}, {0xa92c,220}, {0xa92d,220},
    {0xa953,9}, {0xa9b3,7}, {0xa9c0,9}, {0xaab0,230}, {0xaab2,230}, {0xaab3,230},
    {0xaab4,220}, {0xaab7,230}, {0xaab8,230}, {0xaabe,230}, {0xaabf,230}, {0xaac1,230},
    {0xaaf6,9}, {0xabed,9}, {0xfb1e,26}, {0xfe20,230}, {0xfe21,230}, {0xfe22,230},
    {0xfe23,230}, {0xfe24,230}, {0xfe25,230}, {0xfe26,230}, {0xfe27,220}, {0xfe28,220},
    {0xfe29,220}, {0xfe2a,220}, {0xfe2b,220}, {0xfe2c,220}, {0xfe2d,220}, {0xfe2e,230},
    {0xfe2f,230}, {0x101fd,220}, {0x102e0,220}, {0x10376,230}, {0x10377,230}, {0x10378,230},
    {0x10379,230}, {0x1037a,230}, {0x10a0d,220}, {0x10a0f,230}, {0x10a38,230}, {0x10a39,1},
    {0x10a3a,220}, {0x10a3f,9}, {0x10ae5,230}, {0x10ae6,220}, {0x10d24,230}, {0x10d25,230},
    {0x10d26,230}, {0x10d27,230}, {0x10eab,230}, {0x10eac,230}, {0x10f46,220}, {0x10f47,220},
    {0x10f48,230}, {0x10f49,230}, {0x10f4a,230}, {0x10f4b,220}, {0x10f4c,230}, {0x10f4d,220},
    {0x10f4e,220}, {0x10f4f,220}, {0x10f50,220}, {0x11046,9}, {0x1107f,9}, {0x110b9,9},
    {0x110ba,7}, {0x11100,230}, {0x11101,230}, {0x11102,230}, {0x11133,9}, {0x11134,9},
    {0x11173,7}, {0x111c0,9}, {0x111ca,7}, {0x11235,9}, {0x11236,7}, {0x112e9,7},
    {0x112ea,9}, {0x1133b,7}, {0x1133c,7}, {0x1134d,9}, {0x11366,230}, {0x11367,230},
    {0x11368,230}, {0x11369,230}, {0x1136a,230}, {0x1136b,230}, {0x1136c,230}, {0x11370,230},
    {0x11371,230}, {0x11372,230}, {0x11373,230}, {0x11374,230}, {0x11442,9}, {0x11446,7},
    {0x1145e,230}, {0x114c2,9}, {0x114c3,7}, {0x115bf,9}, {0x115c0,7}, {0x1163f,9},
    {0x116b6,9}, {0x116b7,7}, {0x1172b,9}, {0x11839,9}, {0x1183a,7}, {0x1193d,9},
    {0x1193e,9}, {0x11943,7}, {0x119e0,9}, {0x11a34,9}, {0x11a47,9}, {0x11a99,9},
    {0x11c3f,9}, {0x11d42,7}, {0x11d44,9}, {0x11d45,9}, {0x11d97,9}, {0x16af0,1},
    {0x16af1,1}, {0x16af2,1}, {0x16af3,1}, {0x16af4,1}, {0x16b30,230}, {0x16b31,230},
    {0x16b32,230}, {0x16b33,230}, {0x16b34,230}, {0x16b35,230}, {0x16b36,230}, {0x16ff0,6},
    {0x16ff1,6}, {0x1bc9e,1}, {0x1d165,216}, {0x1d166,216}, {0x1d167,1}, {0x1d168,1},
    {0x1d169,1}, {0x1d16d,226}, {0x1d16e,216}, {0x1d16f,216}, {0x1d170,216}, {0x1d171,216},
    {0x1d172,216}, {0x1d17b,220}, {0x1d17c,220}, {0x1d17d,220}, {0x1d17e,220}, {0x1d17f,220},
    {0x1d180,220}, {0x1d181,220}, {0x1d182,220}, {0x1d185,230}, {0x1d186,230}, {0x1d187,230},
    {0x1d188,230}, {0x1d189,230}, {0x1d18a,220}, {0x1d18b,220}, {0x1d1aa,230}, {0x1d1ab,230},
    {0x1d1ac,230}, {0x1d1ad,230}, {0x1d242,230}, {0x1d243,230}, {0x1d244,230}, {0x1e000,230},
    {0x1e001,230}, {0x1e002,230}, {0x1e003,230}, {0x1e004,230}, {0x1e005,230}, {0x1e006,230},
    {0x1e008,230}, {0x1e009,230}, {0x1e00a,230}, {0x1e00b,230}, {0x1e00c,230}, {0x1e00d,230},
    {0x1e00e,230}, {0x1e00f,230}, {0x1e010,230}, {0x1e011,230}, {0x1e012,230}, {0x1e013,230},
    {0x1e014,230}, {0x1e015,230}, {0x1e016,230}, {0x1e017,230}, {0x1e018,230}, {0x1e01b,230},
    {0x1e01c,230}, {0x1e01d,230}, {0x1e01e,230}, {0x1e01f,230}, {0x1e020,230}, {0x1e021,230},
    {0x1e023,230}, {0x1e024,230}, {0x1e026,230}, {0x1e027,230}, {0x1e028,230}, {0x1e029,230},
    {0x1e02a,230}, {0x1e130,230}, {0x1e131,230}, {0x1e132,230}, {0x1e133,230}, {0x1e134,230},
    {0x1e135,230}, {0x1e136,230}, {0x1e2ec,230}, {0x1e2ed,230}, {0x1e2ee,230}, {0x1e2ef,230},
    {0x1e8d0,220}, {0x1e8d1,220}, {0x1e8d2,220}, {0x1e8d3,220}, {0x1e8d4,220}, {0x1e8d5,220},
    {0x1e8d6,220}, {0x1e944,230}, {0x1e945,230}, {0x1e946,230}, {0x1e947,230}, {0x1e948,230},
    {0x1e949,230}, {0x1e94a,7},
};
const std::size_t kCccEntryCount = 872;

const DecompEntry kDecompEntries[] = {
    {0xc0,0,2}, {0xc1,2,2}, {0xc2,4,2}, {0xc3,6,2}, {0xc4,8,2},
    {0xc5,10,2}, {0xc7,12,2}, {0xc8,14,2}, {0xc9,16,2}, {0xca,18,2},
    {0xcb,20,2}, {0xcc,22,2}, {0xcd,24,2}, {0xce,26,2}, {0xcf,28,2},
    {0xd1,30,2}, {0xd2,32,2}, {0xd3,34,2}, {0xd4,36,2}, {0xd5,38,2},
    {0xd6,40,2}, {0xd9,42,2}, {0xda,44,2}, {0xdb,46,2}, {0xdc,48,2},
    {0xdd,50,2}, {0xe0,52,2}, {0xe1,54,2}, {0xe2,56,2}, {0xe3,58,2},
    {0xe4,60,2}, {0xe5,62,2}, {0xe7,64,2}, {0xe8,66,2}, {0xe9,68,2},
    {0xea,70,2}, {0xeb,72,2}, {0xec,74,2}, {0xed,76,2}, {0xee,78,2},
    {0xef,80,2}, {0xf1,82,2}, {0xf2,84,2}, {0xf3,86,2}, {0xf4,88,2},
    {0xf5,90,2}, {0xf6,92,2}, {0xf9,94,2}, {0xfa,96,2}, {0xfb,98,2},
    {0xfc,100,2}, {0xfd,102,2}, {0xff,104,2}, {0x100,106,2}, {0x101,108,2},
    {0x102,110,2}, {0x103,112,2}, {0x104,114,2}, {0x105,116,2}, {0x106,118,2},
    {0x107,120,2}, {0x108,122,2}, {0x109,124,2}, {0x10a,126,2}, {0x10b,128,2},
    {0x10c,130,2}, {0x10d,132,2}, {0x10e,134,2}, {0x10f,136,2}, {0x112,138,2},
    {0x113,140,2}, {0x114,142,2}, {0x115,144,2}, {0x116,146,2}, {0x117,148,2},
    {0x118,150,2}, {0x119,152,2}, {0x11a,154,2}, {0x11b,156,2}, {0x11c,158,2},
    {0x11d,160,2}, {0x11e,162,2}, {0x11f,164,2}, {0x120,166,2}, {0x121,168,2},
    {0x122,170,2}, {0x123,172,2}, {0x124,174,2}, {0x125,176,2}, {0x128,178,2},
    {0x129,180,2}, {0x12a,182,2}, {0x12b,184,2}, {0x12c,186,2}, {0x12d,188,2},
    {0x12e,190,2}, {0x12f,192,2}, {0x130,194,2}, {0x134,196,2}, {0x135,198,2},
    {0x136,200,2}, {0x137,202,2}, {0x139,204,2}, {0x13a,206,2}, {0x13b,208,2},
    {0x13c,210,2}, {0x13d,212,2}, {0x13e,214,2}, {0x143,216,2}, {0x144,218,2},
    {0x145,220,2}, {0x146,222,2}, {0x147,224,2}, {0x148,226,2}, {0x14c,228,2},
    {0x14d,230,2}, {0x14e,232,2}, {0x14f,234,2}, {0x150,236,2}, {0x151,238,2},
    {0x154,240,2}, {0x155,242,2}, {0x156,244,2}, {0x157,246,2}, {0x158,248,2},
    {0x159,250,2}, {0x15a,252,2}, {0x15b,254,2}, {0x15c,256,2}, {0x15d,258,2},
    {0x15e,260,2}, {0x15f,262,2}, {0x160,264,2}, {0x161,266,2}, {0x162,268,2},
    {0x163,270,2}, {0x164,272,2}, {0x165,274,2}, {0x168,276,2}, {0x169,278,2},
    {0x16a,280,2}, {0x16b,282,2}, {0x16c,284,2}, {0x16d,286,2}, {0x16e,288,2},
    {0x16f,290,2}, {0x170,292,2}, {0x171,294,2}, {0x172,296,2}, {0x173,298,2},
    {0x174,300,2}, {0x175,302,2}, {0x176,304,2}, {0x177,306,2}, {0x178,308,2},
    {0x179,310,2}, {0x17a,312,2}, {0x17b,314,2}, {0x17c,316,2}, {0x17d,318,2},
    {0x17e,320,2}, {0x1a0,322,2}, {0x1a1,324,2}, {0x1af,326,2}, {0x1b0,328,2},
    {0x1cd,330,2}, {0x1ce,332,2}, {0x1cf,334,2}, {0x1d0,336,2}, {0x1d1,338,2},
    {0x1d2,340,2}, {0x1d3,342,2}, {0x1d4,344,2}, {0x1d5,346,3}, {0x1d6,349,3},
    {0x1d7,352,3}, {0x1d8,355,3}, {0x1d9,358,3}, {0x1da,361,3}, {0x1db,364,3},
    {0x1dc,367,3}, {0x1de,370,3}, {0x1df,373,3}, {0x1e0,376,3}, {0x1e1,379,3},
    {0x1e2,382,2}, {0x1e3,384,2}, {0x1e6,386,2}, {0x1e7,388,2}, {0x1e8,390,2},
    {0x1e9,392,2}, {0x1ea,394,2}, {0x1eb,396,2}, {0x1ec,398,3}, {0x1ed,401,3},
    {0x1ee,404,2}, {0x1ef,406,2}, {0x1f0,408,2}, {0x1f4,410,2}, {0x1f5,412,2},
    {0x1f8,414,2}, {0x1f9,416,2}, {0x1fa,418,3}, {0x1fb,421,3}, {0x1fc,424,2},
    {0x1fd,426,2}, {0x1fe,428,2}, {0x1ff,430,2}, {0x200,432,2}, {0x201,434,2},
    {0x202,436,2}, {0x203,438,2}, {0x204,440,2}, {0x205,442,2}, {0x206,444,2},
    {0x207,446,2}, {0x208,448,2}, {0x209,450,2}, {0x20a,452,2}, {0x20b,454,2},
    {0x20c,456,2}, {0x20d,458,2}, {0x20e,460,2}, {0x20f,462,2}, {0x210,464,2},
    {0x211,466,2}, {0x212,468,2}, {0x213,470,2}, {0x214,472,2}, {0x215,474,2},
    {0x216,476,2}, {0x217,478,2}, {0x218,480,2}, {0x219,482,2}, {0x21a,484,2},
    {0x21b,486,2}, {0x21e,488,2}, {0x21f,490,2}, {0x226,492,2}, {0x227,494,2},
    {0x228,496,2}, {0x229,498,2}, {0x22a,500,3}, {0x22b,503,3}, {0x22c,506,3},
    {0x22d,509,3}, {0x22e,512,2}, {0x22f,514,2}, {0x230,516,3}, {0x231,519,3},
    {0x232,522,2}, {0x233,524,2}, {0x340,526,1}, {0x341,527,1}, {0x343,528,1},
    {0x344,529,2}, {0x374,531,1}, {0x37e,532,1}, {0x385,533,2}, {0x386,535,2},
    {0x387,537,1}, {0x388,538,2}, {0x389,540,2}, {0x38a,542,2}, {0x38c,544,2},
    {0x38e,546,2}, {0x38f,548,2}, {0x390,550,3}, {0x3aa,553,2}, {0x3ab,555,2},
    {0x3ac,557,2}, {0x3ad,559,2}, {0x3ae,561,2}, {0x3af,563,2}, {0x3b0,565,3},
    {0x3ca,568,2}, {0x3cb,570,2}, {0x3cc,572,2}, {0x3cd,574,2}, {0x3ce,576,2},
    {0x3d3,578,2}, {0x3d4,580,2}, {0x400,582,2}, {0x401,584,2}, {0x403,586,2},
    {0x407,588,2}, {0x40c,590,2}, {0x40d,592,2}, {0x40e,594,2}, {0x419,596,2},
    {0x439,598,2}, {0x450,600,2}, {0x451,602,2}, {0x453,604,2}, {0x457,606,2},
    {0x45c,608,2}, {0x45d,610,2}, {0x45e,612,2}, {0x476,614,2}, {0x477,616,2},
    {0x4c1,618,2}, {0x4c2,620,2}, {0x4d0,622,2}, {0x4d1,624,2}, {0x4d2,626,2},
    {0x4d3,628,2}, {0x4d6,630,2}, {0x4d7,632,2}, {0x4da,634,2}, {0x4db,636,2},
    {0x4dc,638,2}, {0x4dd,640,2}, {0x4de,642,2}, {0x4df,644,2}, {0x4e2,646,2},
    {0x4e3,648,2}, {0x4e4,650,2}, {0x4e5,652,2}, {0x4e6,654,2}, {0x4e7,656,2},
    {0x4ea,658,2}, {0x4eb,660,2}, {0x4ec,662,2}, {0x4ed,664,2}, {0x4ee,666,2},
    {0x4ef,668,2}, {0x4f0,670,2}, {0x4f1,672,2}, {0x4f2,674,2}, {0x4f3,676,2},
    {0x4f4,678,2}, {0x4f5,680,2}, {0x4f8,682,2}, {0x4f9,684,2}, {0x622,686,2},
    {0x623,688,2}, {0x624,690,2}, {0x625,692,2}, {0x626,694,2}, {0x6c0,696,2},
    {0x6c2,698,2}, {0x6d3,700,2}, {0x929,702,2}, {0x931,704,2}, {0x934,706,2},
    {0x958,708,2}, {0x959,710,2}, {0x95a,712,2}, {0x95b,714,2}, {0x95c,716,2},
    {0x95d,718,2}, {0x95e,720,2}, {0x95f,722,2}, {0x9cb,724,2}, {0x9cc,726,2},
    {0x9dc,728,2}, {0x9dd,730,2}, {0x9df,732,2}, {0xa33,734,2}, {0xa36,736,2},
    {0xa59,738,2}, {0xa5a,740,2}, {0xa5b,742,2}, {0xa5e,744,2}, {0xb48,746,2},
    {0xb4b,748,2}, {0xb4c,750,2}, {0xb5c,752,2}, {0xb5d,754,2}, {0xb94,756,2},
    {0xbca,758,2}, {0xbcb,760,2}, {0xbcc,762,2}, {0xc48,764,2}, {0xcc0,766,2},
    {0xcc7,768,2}, {0xcc8,770,2}, {0xcca,772,2}, {0xccb,774,3}, {0xd4a,777,2},
    {0xd4b,779,2}, {0xd4c,781,2}, {0xdda,783,2}, {0xddc,785,2}, {0xddd,787,3},
    {0xdde,790,2}, {0xf43,792,2}, {0xf4d,794,2}, {0xf52,796,2}, {0xf57,798,2},
    {0xf5c,800,2}, {0xf69,802,2}, {0xf73,804,2}, {0xf75,806,2}, {0xf76,808,2},
    {0xf78,810,2}, {0xf81,812,2}, {0xf93,814,2}, {0xf9d,816,2}, {0xfa2,818,2},
    {0xfa7,820,2}, {0xfac,822,2}, {0xfb9,824,2}, {0x1026,826,2}, {0x1b06,828,2},
    {0x1b08,830,2}, {0x1b0a,832,2}, {0x1b0c,834,2}, {0x1b0e,836,2}, {0x1b12,838,2},
    {0x1b3b,840,2}, {0x1b3d,842,2}, {0x1b40,844,2}, {0x1b41,846,2}, {0x1b43,848,2},
    {0x1e00,850,2}, {0x1e01,852,2}, {0x1e02,854,2}, {0x1e03,856,2}, {0x1e04,858,2},
    {0x1e05,860,2}, {0x1e06,862,2}, {0x1e07,864,2}, {0x1e08,866,3}, {0x1e09,869,3},
    {0x1e0a,872,2}, {0x1e0b,874,2}, {0x1e0c,876,2}, {0x1e0d,878,2}, {0x1e0e,880,2},
    {0x1e0f,882,2}, {0x1e10,884,2}, {0x1e11,886,2}, {0x1e12,888,2}, {0x1e13,890,2},
    {0x1e14,892,3}, {0x1e15,895,3}, {0x1e16,898,3}, {0x1e17,901,3}, {0x1e18,904,2},
    {0x1e19,906,2}, {0x1e1a,908,2}, {0x1e1b,910,2}, {0x1e1c,912,3}, {0x1e1d,915,3},
    {0x1e1e,918,2}, {0x1e1f,920,2}, {0x1e20,922,2}, {0x1e21,924,2}, {0x1e22,926,2},
    {0x1e23,928,2}, {0x1e24,930,2}, {0x1e25,932,2}, {0x1e26,934,2}, {0x1e27,936,2},
    {0x1e28,938,2}, {0x1e29,940,2}, {0x1e2a,942,2}, {0x1e2b,944,2}, {0x1e2c,946,2},
    {0x1e2d,948,2}, {0x1e2e,950,3}, {0x1e2f,953,3}, {0x1e30,956,2}, {0x1e31,958,2},
    {0x1e32,960,2}, {0x1e33,962,2}, {0x1e34,964,2}, {0x1e35,966,2}, {0x1e36,968,2},
    {0x1e37,970,2}, {0x1e38,972,3}, {0x1e39,975,3}, {0x1e3a,978,2}, {0x1e3b,980,2},
    {0x1e3c,982,2}, {0x1e3d,984,2}, {0x1e3e,986,2}, {0x1e3f,988,2}, {0x1e40,990,2},
    {0x1e41,992,2}, {0x1e42,994,2}, {0x1e43,996,2}, {0x1e44,998,2}, {0x1e45,1000,2},
    {0x1e46,1002,2}, {0x1e47,1004,2}, {0x1e48,1006,2}, {0x1e49,1008,2}, {0x1e4a,1010,2},
    {0x1e4b,1012,2}, {0x1e4c,1014,3}, {0x1e4d,1017,3}, {0x1e4e,1020,3}, {0x1e4f,1023,3},
    {0x1e50,1026,3}, {0x1e51,1029,3}, {0x1e52,1032,3}, {0x1e53,1035,3}, {0x1e54,1038,2},
    {0x1e55,1040,2}, {0x1e56,1042,2}, {0x1e57,1044,2}, {0x1e58,1046,2}, {0x1e59,1048,2},
    {0x1e5a,1050,2}, {0x1e5b,1052,2}, {0x1e5c,1054,3}, {0x1e5d,1057,3}, {0x1e5e,1060,2},
    {0x1e5f,1062,2}, {0x1e60,1064,2}, {0x1e61,1066,2}, {0x1e62,1068,2}, {0x1e63,1070,2},
    {0x1e64,1072,3}, {0x1e65,1075,3}, {0x1e66,1078,3}, {0x1e67,1081,3}, {0x1e68,1084,3},
    {0x1e69,1087,3}, {0x1e6a,1090,2}, {0x1e6b,1092,2}, {0x1e6c,1094,2}, {0x1e6d,1096,2},
    {0x1e6e,1098,2}, {0x1e6f,1100,2}, {0x1e70,1102,2}, {0x1e71,1104,2}, {0x1e72,1106,2},
    {0x1e73,1108,2}, {0x1e74,1110,2}, {0x1e75,1112,2}, {0x1e76,1114,2}, {0x1e77,1116,2},
    {0x1e78,1118,3}, {0x1e79,1121,3}, {0x1e7a,1124,3}, {0x1e7b,1127,3}, {0x1e7c,1130,2},
    {0x1e7d,1132,2}, {0x1e7e,1134,2}, {0x1e7f,1136,2}, {0x1e80,1138,2}, {0x1e81,1140,2},
    {0x1e82,1142,2}, {0x1e83,1144,2}, {0x1e84,1146,2}, {0x1e85,1148,2}, {0x1e86,1150,2},
    {0x1e87,1152,2}, {0x1e88,1154,2}, {0x1e89,1156,2}, {0x1e8a,1158,2}, {0x1e8b,1160,2},
    {0x1e8c,1162,2}, {0x1e8d,1164,2}, {0x1e8e,1166,2}, {0x1e8f,1168,2}, {0x1e90,1170,2},
    {0x1e91,1172,2}, {0x1e92,1174,2}, {0x1e93,1176,2}, {0x1e94,1178,2}, {0x1e95,1180,2},
    {0x1e96,1182,2}, {0x1e97,1184,2}, {0x1e98,1186,2}, {0x1e99,1188,2}, {0x1e9b,1190,2},
    {0x1ea0,1192,2}, {0x1ea1,1194,2}, {0x1ea2,1196,2}, {0x1ea3,1198,2}, {0x1ea4,1200,3},
    {0x1ea5,1203,3}, {0x1ea6,1206,3}, {0x1ea7,1209,3}, {0x1ea8,1212,3}, {0x1ea9,1215,3},
    {0x1eaa,1218,3}, {0x1eab,1221,3}, {0x1eac,1224,3}, {0x1ead,1227,3}, {0x1eae,1230,3},
    {0x1eaf,1233,3}, {0x1eb0,1236,3}, {0x1eb1,1239,3}, {0x1eb2,1242,3}, {0x1eb3,1245,3},
    {0x1eb4,1248,3}, {0x1eb5,1251,3}, {0x1eb6,1254,3}, {0x1eb7,1257,3}, {0x1eb8,1260,2},
    {0x1eb9,1262,2}, {0x1eba,1264,2}, {0x1ebb,1266,2}, {0x1ebc,1268,2}, {0x1ebd,1270,2},
    {0x1ebe,1272,3}, {0x1ebf,1275,3}, {0x1ec0,1278,3}, {0x1ec1,1281,3}, {0x1ec2,1284,3},
    {0x1ec3,1287,3}, {0x1ec4,1290,3}, {0x1ec5,1293,3}, {0x1ec6,1296,3}, {0x1ec7,1299,3},
    {0x1ec8,1302,2}, {0x1ec9,1304,2}, {0x1eca,1306,2}, {0x1ecb,1308,2}, {0x1ecc,1310,2},
    {0x1ecd,1312,2}, {0x1ece,1314,2}, {0x1ecf,1316,2}, {0x1ed0,1318,3}, {0x1ed1,1321,3},
    {0x1ed2,1324,3}, {0x1ed3,1327,3}, {0x1ed4,1330,3}, {0x1ed5,1333,3}, {0x1ed6,1336,3},
    {0x1ed7,1339,3}, {0x1ed8,1342,3}, {0x1ed9,1345,3}, {0x1eda,1348,3}, {0x1edb,1351,3},
    {0x1edc,1354,3}, {0x1edd,1357,3}, {0x1ede,1360,3}, {0x1edf,1363,3}, {0x1ee0,1366,3},
    {0x1ee1,1369,3}, {0x1ee2,1372,3}, {0x1ee3,1375,3}, {0x1ee4,1378,2}, {0x1ee5,1380,2},
    {0x1ee6,1382,2}, {0x1ee7,1384,2}, {0x1ee8,1386,3}, {0x1ee9,1389,3}, {0x1eea,1392,3},
    {0x1eeb,1395,3}, {0x1eec,1398,3}, {0x1eed,1401,3}, {0x1eee,1404,3}, {0x1eef,1407,3},
    {0x1ef0,1410,3}, {0x1ef1,1413,3}, {0x1ef2,1416,2}, {0x1ef3,1418,2}, {0x1ef4,1420,2},
    {0x1ef5,1422,2}, {0x1ef6,1424,2}, {0x1ef7,1426,2}, {0x1ef8,1428,2}, {0x1ef9,1430,2},
    {0x1f00,1432,2}, {0x1f01,1434,2}, {0x1f02,1436,3}, {0x1f03,1439,3}, {0x1f04,1442,3},
    {0x1f05,1445,3}, {0x1f06,1448,3}, {0x1f07,1451,3}, {0x1f08,1454,2}, {0x1f09,1456,2},
    {0x1f0a,1458,3}, {0x1f0b,1461,3}, {0x1f0c,1464,3}, {0x1f0d,1467,3}, {0x1f0e,1470,3},
    {0x1f0f,1473,3}, {0x1f10,1476,2}, {0x1f11,1478,2}, {0x1f12,1480,3}, {0x1f13,1483,3},
    {0x1f14,1486,3}, {0x1f15,1489,3}, {0x1f18,1492,2}, {0x1f19,1494,2}, {0x1f1a,1496,3},
    {0x1f1b,1499,3}, {0x1f1c,1502,3}, {0x1f1d,1505,3}, {0x1f20,1508,2}, {0x1f21,1510,2},
    {0x1f22,1512,3}, {0x1f23,1515,3}, {0x1f24,1518,3}, {0x1f25,1521,3}, {0x1f26,1524,3},
    {0x1f27,1527,3}, {0x1f28,1530,2}, {0x1f29,1532,2}, {0x1f2a,1534,3}, {0x1f2b,1537,3},
    {0x1f2c,1540,3}, {0x1f2d,1543,3}, {0x1f2e,1546,3}, {0x1f2f,1549,3}, {0x1f30,1552,2},
    {0x1f31,1554,2}, {0x1f32,1556,3}, {0x1f33,1559,3}, {0x1f34,1562,3}, {0x1f35,1565,3},
    {0x1f36,1568,3}, {0x1f37,1571,3}, {0x1f38,1574,2}, {0x1f39,1576,2}, {0x1f3a,1578,3},
    {0x1f3b,1581,3}, {0x1f3c,1584,3}, {0x1f3d,1587,3}, {0x1f3e,1590,3}, {0x1f3f,1593,3},
    {0x1f40,1596,2}, {0x1f41,1598,2}, {0x1f42,1600,3}, {0x1f43,1603,3}, {0x1f44,1606,3},
    {0x1f45,1609,3}, {0x1f48,1612,2}, {0x1f49,1614,2}, {0x1f4a,1616,3}, {0x1f4b,1619,3},
    {0x1f4c,1622,3}, {0x1f4d,1625,3}, {0x1f50,1628,2}, {0x1f51,1630,2}, {0x1f52,1632,3},
    {0x1f53,1635,3}, {0x1f54,1638,3}, {0x1f55,1641,3}, {0x1f56,1644,3}, {0x1f57,1647,3},
    {0x1f59,1650,2}, {0x1f5b,1652,3}, {0x1f5d,1655,3}, {0x1f5f,1658,3}, {0x1f60,1661,2},
    {0x1f61,1663,2}, {0x1f62,1665,3}, {0x1f63,1668,3}, {0x1f64,1671,3}, {0x1f65,1674,3},
    {0x1f66,1677,3}, {0x1f67,1680,3}, {0x1f68,1683,2}, {0x1f69,1685,2}, {0x1f6a,1687,3},
    {0x1f6b,1690,3}, {0x1f6c,1693,3}, {0x1f6d,1696,3}, {0x1f6e,1699,3}, {0x1f6f,1702,3},
    {0x1f70,1705,2}, {0x1f71,1707,2}, {0x1f72,1709,2}, {0x1f73,1711,2}, {0x1f74,1713,2},
    {0x1f75,1715,2}, {0x1f76,1717,2}, {0x1f77,1719,2}, {0x1f78,1721,2}, {0x1f79,1723,2},
    {0x1f7a,1725,2}, {0x1f7b,1727,2}, {0x1f7c,1729,2}, {0x1f7d,1731,2}, {0x1f80,1733,3},
    {0x1f81,1736,3}, {0x1f82,1739,4}, {0x1f83,1743,4}, {0x1f84,1747,4}, {0x1f85,1751,4},
    {0x1f86,1755,4}, {0x1f87,1759,4}, {0x1f88,1763,3}, {0x1f89,1766,3}, {0x1f8a,1769,4},
    {0x1f8b,1773,4}, {0x1f8c,1777,4}, {0x1f8d,1781,4}, {0x1f8e,1785,4}, {0x1f8f,1789,4},
    {0x1f90,1793,3}, {0x1f91,1796,3}, {0x1f92,1799,4}, {0x1f93,1803,4}, {0x1f94,1807,4},
    {0x1f95,1811,4}, {0x1f96,1815,4}, {0x1f97,1819,4}, {0x1f98,1823,3}, {0x1f99,1826,3},
    {0x1f9a,1829,4}, {0x1f9b,1833,4}, {0x1f9c,1837,4}, {0x1f9d,1841,4}, {0x1f9e,1845,4},
    {0x1f9f,1849,4}, {0x1fa0,1853,3}, {0x1fa1,1856,3}, {0x1fa2,1859,4}, {0x1fa3,1863,4},
    {0x1fa4,1867,4}, {0x1fa5,1871,4}, {0x1fa6,1875,4}, {0x1fa7,1879,4}, {0x1fa8,1883,3},
    {0x1fa9,1886,3}, {0x1faa,1889,4}, {0x1fab,1893,4}, {0x1fac,1897,4}, {0x1fad,1901,4},
    {0x1fae,1905,4}, {0x1faf,1909,4}, {0x1fb0,1913,2}, {0x1fb1,1915,2}, {0x1fb2,1917,3},
    {0x1fb3,1920,2}, {0x1fb4,1922,3}, {0x1fb6,1925,2}, {0x1fb7,1927,3}, {0x1fb8,1930,2},
    {0x1fb9,1932,2}, {0x1fba,1934,2}, {0x1fbb,1936,2}, {0x1fbc,1938,2}, {0x1fbe,1940,1},
    {0x1fc1,1941,2}, {0x1fc2,1943,3}, {0x1fc3,1946,2}, {0x1fc4,1948,3}, {0x1fc6,1951,2},
    {0x1fc7,1953,3}, {0x1fc8,1956,2}, {0x1fc9,1958,2}, {0x1fca,1960,2}, {0x1fcb,1962,2},
    {0x1fcc,1964,2}, {0x1fcd,1966,2}, {0x1fce,1968,2}, {0x1fcf,1970,2}, {0x1fd0,1972,2},
    {0x1fd1,1974,2}, {0x1fd2,1976,3}, {0x1fd3,1979,3}, {0x1fd6,1982,2}, {0x1fd7,1984,3},
    {0x1fd8,1987,2}, {0x1fd9,1989,2}, {0x1fda,1991,2}, {0x1fdb,1993,2}, {0x1fdd,1995,2},
    {0x1fde,1997,2}, {0x1fdf,1999,2}, {0x1fe0,2001,2}, {0x1fe1,2003,2}, {0x1fe2,2005,3},
    {0x1fe3,2008,3}, {0x1fe4,2011,2}, {0x1fe5,2013,2}, {0x1fe6,2015,2}, {0x1fe7,2017,3},
    {0x1fe8,2020,2}, {0x1fe9,2022,2}, {0x1fea,2024,2}, {0x1feb,2026,2}, {0x1fec,2028,2},
    {0x1fed,2030,2}, {0x1fee,2032,2}, {0x1fef,2034,1}, {0x1ff2,2035,3}, {0x1ff3,2038,2},
    {0x1ff4,2040,3}, {0x1ff6,2043,2}, {0x1ff7,2045,3}, {0x1ff8,2048,2}, {0x1ff9,2050,2},
    {0x1ffa,2052,2}, {0x1ffb,2054,2}, {0x1ffc,2056,2}, {0x1ffd,2058,1}, {0x2000,2059,1},
    {0x2001,2060,1}, {0x2126,2061,1}, {0x212a,2062,1}, {0x212b,2063,2}, {0x219a,2065,2},
    {0x219b,2067,2}, {0x21ae,2069,2}, {0x21cd,2071,2}, {0x21ce,2073,2}, {0x21cf,2075,2},
    {0x2204,2077,2}, {0x2209,2079,2}, {0x220c,2081,2}, {0x2224,2083,2}, {0x2226,2085,2},
    {0x2241,2087,2}, {0x2244,2089,2}, {0x2247,2091,2}, {0x2249,2093,2}, {0x2260,2095,2},
    {0x2262,2097,2}, {0x226d,2099,2}, {0x226e,2101,2}, {0x226f,2103,2}, {0x2270,2105,2},
    {0x2271,2107,2}, {0x2274,2109,2}, {0x2275,2111,2}, {0x2278,2113,2}, {0x2279,2115,2},
    {0x2280,2117,2}, {0x2281,2119,2}, {0x2284,2121,2}, {0x2285,2123,2}, {0x2288,2125,2},
    {0x2289,2127,2}, {0x22ac,2129,2}, {0x22ad,2131,2}, {0x22ae,2133,2}, {0x22af,2135,2},
    {0x22e0,2137,2}, {0x22e1,2139,2}, {0x22e2,2141,2}, {0x22e3,2143,2}, {0x22ea,2145,2},
    {0x22eb,2147,2}, {0x22ec,2149,2}, {0x22ed,2151,2}, {0x2329,2153,1}, {0x232a,2154,1},
    {0x2adc,2155,2}, {0x304c,2157,2}, {0x304e,2159,2}, {0x3050,2161,2}, {0x3052,2163,2},
    {0x3054,2165,2}, {0x3056,2167,2}, {0x3058,2169,2}, {0x305a,2171,2}, {0x305c,2173,2},
    {0x305e,2175,2}, {0x3060,2177,2}, {0x3062,2179,2}, {0x3065,2181,2}, {0x3067,2183,2},
    {0x3069,2185,2}, {0x3070,2187,2}, {0x3071,2189,2}, {0x3073,2191,2}, {0x3074,2193,2},
    {0x3076,2195,2}, {0x3077,2197,2}, {0x3079,2199,2}, {0x307a,2201,2}, {0x307c,2203,2},
    {0x307d,2205,2}, {0x3094,2207,2}, {0x309e,2209,2}, {0x30ac,2211,2}, {0x30ae,2213,2},
    {0x30b0,2215,2}, {0x30b2,2217,2}, {0x30b4,2219,2}, {0x30b6,2221,2}, {0x30b8,2223,2},
    {0x30ba,2225,2}, {0x30bc,2227,2}, {0x30be,2229,2}, {0x30c0,2231,2}, {0x30c2,2233,2},
    {0x30c5,2235,2}, {0x30c7,2237,2}, {0x30c9,2239,2}, {0x30d0,2241,2}, {0x30d1,2243,2},
    {0x30d3,2245,2}, {0x30d4,2247,2}, {0x30d6,2249,2}, {0x30d7,2251,2}, {0x30d9,2253,2},
    {0x30da,2255,2}, {0x30dc,2257,2}, {0x30dd,2259,2}, {0x30f4,2261,2}, {0x30f7,2263,2},
    {0x30f8,2265,2}, {0x30f9,2267,2}, {0x30fa,2269,2}, {0x30fe,2271,2}, {0xf900,2273,1},
    {0xf901,2274,1}, {0xf902,2275,1}, {0xf903,2276,1}, {0xf904,2277,1}, {0xf905,2278,1},
    {0xf906,2279,1}, {0xf907,2280,1}, {0xf908,2281,1}, {0xf909,2282,1}, {0xf90a,2283,1},
    {0xf90b,2284,1}, {0xf90c,2285,1}, {0xf90d,2286,1}, {0xf90e,2287,1}, {0xf90f,2288,1},
    {0xf910,2289,1}, {0xf911,2290,1}, {0xf912,2291,1}, {0xf913,2292,1}, {0xf914,2293,1},
    {0xf915,2294,1}, {0xf916,2295,1}, {0xf917,2296,1}, {0xf918,2297,1}, {0xf919,2298,1},
    {0xf91a,2299,1}, {0xf91b,2300,1}, {0xf91c,2301,1}, {0xf91d,2302,1}, {0xf91e,2303,1},
    {0xf91f,2304,1}, {0xf920,2305,1}, {0xf921,2306,1}, {0xf922,2307,1}, {0xf923,2308,1},
    {0xf924,2309,1}, {0xf925,2310,1}, {0xf926,2311,1}, {0xf927,2312,1}, {0xf928,2313,1},
    {0xf929,2314,1}, {0xf92a,2315,1}, {0xf92b,2316,1}, {0xf92c,2317,1}, {0xf92d,2318,1},
    {0xf92e,2319,1}, {0xf92f,2320,1}, {0xf930,2321,1}, {0xf931,2322,1}, {0xf932,2323,1},
    {0xf933,2324,1}, {0xf934,2325,1}, {0xf935,2326,1}, {0xf936,2327,1}, {0xf937,2328,1},
    {0xf938,2329,1}, {0xf939,2330,1}, {0xf93a,2331,1}, {0xf93b,2332,1}, {0xf93c,2333,1},
    {0xf93d,2334,1}, {0xf93e,2335,1}, {0xf93f,2336,1}, {0xf940,2337,1}, {0xf941,2338,1},
    {0xf942,2339,1}, {0xf943,2340,1}, {0xf944,2341,1}, {0xf945,2342,1}, {0xf946,2343,1},
    {0xf947,2344,1}, {0xf948,2345,1}, {0xf949,2346,1}, {0xf94a,2347,1}, {0xf94b,2348,1},
    {0xf94c,2349,1}, {0xf94d,2350,1}, {0xf94e,2351,1}, {0xf94f,2352,1}, {0xf950,2353,1},
    {0xf951,2354,1}, {0xf952,2355,1}, {0xf953,2356,1}, {0xf954,2357,1}, {0xf955,2358,1},
    {0xf956,2359,1}, {0xf957,2360,1}, {0xf958,2361,1}, {0xf959,2362,1}, {0xf95a,2363,1},
    {0xf95b,2364,1}, {0xf95c,2365,1}, {0xf95d,2366,1}, {0xf95e,2367,1}, {0xf95f,2368,1},
    {0xf960,2369,1}, {0xf961,2370,1}, {0xf962,2371,1}, {0xf963,2372,1}, {0xf964,2373,1},
    {0xf965,2374,1}, {0xf966,2375,1}, {0xf967,2376,1}, {0xf968,2377,1}, {0xf969,2378,1},
    {0xf96a,2379,1}, {0xf96b,2380,1}, {0xf96c,2381,1}, {0xf96d,2382,1}, {0xf96e,2383,1},
    {0xf96f,2384,1}, {0xf970,2385,1}, {0xf971,2386,1}, {0xf972,2387,1}, {0xf973,2388,1},
    {0xf974,2389,1}, {0xf975,2390,1}, {0xf976,2391,1}, {0xf977,2392,1}, {0xf978,2393,1},
    {0xf979,2394,1}, {0xf97a,2395,1}, {0xf97b,2396,1}, {0xf97c,2397,1}, {0xf97d,2398,1},
    {0xf97e,2399,1}, {0xf97f,2400,1}, {0xf980,2401,1}, {0xf981,2402,1}, {0xf982,2403,1},
    {0xf983,2404,1}, {0xf984,2405,1}, {0xf985,2406,1}, {0xf986,2407,1}, {0xf987,2408,1},
    {0xf988,2409,1}, {0xf989,2410,1}, {0xf98a,2411,1}, {0xf98b,2412,1}, {0xf98c,2413,1},
    {0xf98d,2414,1}, {0xf98e,2415,1}, {0xf98f,2416,1}, {0xf990,2417,1}, {0xf991,2418,1},
    {0xf992,2419,1}, {0xf993,2420,1}, {0xf994,2421,1}, {0xf995,2422,1}, {0xf996,2423,1},
    {0xf997,2424,1}, {0xf998,2425,1}, {0xf999,2426,1}, {0xf99a,2427,1}, {0xf99b,2428,1},
    {0xf99c,2429,1}, {0xf99d,2430,1}, {0xf99e,2431,1}, {0xf99f,2432,1}, {0xf9a0,2433,1},
    {0xf9a1,2434,1}, {0xf9a2,2435,1}, {0xf9a3,2436,1}, {0xf9a4,2437,1}, {0xf9a5,2438,1},
    {0xf9a6,2439,1}, {0xf9a7,2440,1}, {0xf9a8,2441,1}, {0xf9a9,2442,1}, {0xf9aa,2443,1},
    {0xf9ab,2444,1}, {0xf9ac,2445,1}, {0xf9ad,2446,1}, {0xf9ae,2447,1}, {0xf9af,2448,1},
    {0xf9b0,2449,1}, {0xf9b1,2450,1}, {0xf9b2,2451,1}, {0xf9b3,2452,1}, {0xf9b4,2453,1},
    {0xf9b5,2454,1}, {0xf9b6,2455,1}, {0xf9b7,2456,1}, {0xf9b8,2457,1}, {0xf9b9,2458,1},
    {0xf9ba,2459,1}, {0xf9bb,2460,1}, {0xf9bc,2461,1}, {0xf9bd,2462,1}, {0xf9be,2463,1},
    {0xf9bf,2464,1}, {0xf9c0,2465,1}, {0xf9c1,2466,1}, {0xf9c2,2467,1}, {0xf9c3,2468,1},
    {0xf9c4,2469,1}, {0xf9c5,2470,1}, {0xf9c6,2471,1}, {0xf9c7,2472,1}, {0xf9c8,2473,1},
    {0xf9c9,2474,1}, {0xf9ca,2475,1}, {0xf9cb,2476,1}, {0xf9cc,2477,1}, {0xf9cd,2478,1},
    {0xf9ce,2479,1}, {0xf9cf,2480,1}, {0xf9d0,2481,1}, {0xf9d1,2482,1}, {0xf9d2,2483,1},
    {0xf9d3,2484,1}, {0xf9d4,2485,1}, {0xf9d5,2486,1}, {0xf9d6,2487,1}, {0xf9d7,2488,1},
    {0xf9d8,2489,1}, {0xf9d9,2490,1}, {0xf9da,2491,1}, {0xf9db,2492,1}, {0xf9dc,2493,1},
    {0xf9dd,2494,1}, {0xf9de,2495,1}, {0xf9df,2496,1}, {0xf9e0,2497,1}, {0xf9e1,2498,1},
    {0xf9e2,2499,1}, {0xf9e3,2500,1}, {0xf9e4,2501,1}, {0xf9e5,2502,1}, {0xf9e6,2503,1},
    {0xf9e7,2504,1}, {0xf9e8,2505,1}, {0xf9e9,2506,1}, {0xf9ea,2507,1}, {0xf9eb,2508,1},
    {0xf9ec,2509,1}, {0xf9ed,2510,1}, {0xf9ee,2511,1}, {0xf9ef,2512,1}, {0xf9f0,2513,1},
    {0xf9f1,2514,1}, {0xf9f2,2515,1}, {0xf9f3,2516,1}, {0xf9f4,2517,1}, {0xf9f5,2518,1},
    {0xf9f6,2519,1}, {0xf9f7,2520,1}, {0xf9f8,2521,1}, {0xf9f9,2522,1}, {0xf9fa,2523,1},
    {0xf9fb,2524,1}, {0xf9fc,2525,1}, {0xf9fd,2526,1}, {0xf9fe,2527,1}, {0xf9ff,2528,1},
    {0xfa00,2529,1}, {0xfa01,2530,1}, {0xfa02,2531,1}, {0xfa03,2532,1}, {0xfa04,2533,1},
    {0xfa05,2534,1}, {0xfa06,2535,1}, {0xfa07,2536,1}, {0xfa08,2537,1}, {0xfa09,2538,1},
    {0xfa0a,2539,1}, {0xfa0b,2540,1}, {0xfa0c,2541,1}, {0xfa0d,2542,1}, {0xfa10,2543,1},
    {0xfa12,2544,1}, {0xfa15,2545,1}, {0xfa16,2546,1}, {0xfa17,2547,1}, {0xfa18,2548,1},
    {0xfa19,2549,1}, {0xfa1a,2550,1}, {0xfa1b,2551,1}, {0xfa1c,2552,1}, {0xfa1d,2553,1},
    {0xfa1e,2554,1}, {0xfa20,2555,1}, {0xfa22,2556,1}, {0xfa25,2557,1}, {0xfa26,2558,1},
    {0xfa2a,2559,1}, {0xfa2b,2560,1}, {0xfa2c,2561,1}, {0xfa2d,2562,1}, {0xfa2e,2563,1},
    {0xfa2f,2564,1}, {0xfa30,2565,1}, {0xfa31,2566,1}, {0xfa32,2567,1}, {0xfa33,2568,1},
    {0xfa34,2569,1}, {0xfa35,2570,1}, {0xfa36,2571,1}, {0xfa37,2572,1}, {0xfa38,2573,1},
    {0xfa39,2574,1}, {0xfa3a,2575,1}, {0xfa3b,2576,1}, {0xfa3c,2577,1}, {0xfa3d,2578,1},
    {0xfa3e,2579,1}, {0xfa3f,2580,1}, {0xfa40,2581,1}, {0xfa41,2582,1}, {0xfa42,2583,1},
    {0xfa43,2584,1}, {0xfa44,2585,1}, {0xfa45,2586,1}, {0xfa46,2587,1}, {0xfa47,2588,1},
    {0xfa48,2589,1}, {0xfa49,2590,1}, {0xfa4a,2591,1}, {0xfa4b,2592,1}, {0xfa4c,2593,1},
    {0xfa4d,2594,1}, {0xfa4e,2595,1}, {0xfa4f,2596,1}, {0xfa50,2597,1}, {0xfa51,2598,1},
    {0xfa52,2599,1}, {0xfa53,2600,1}, {0xfa54,2601,1}, {0xfa55,2602,1}, {0xfa56,2603,1},
    {0xfa57,2604,1}, {0xfa58,2605,1}, {0xfa59,2606,1}, {0xfa5a,2607,1}, {0xfa5b,2608,1},
    {0xfa5c,2609,1}, {0xfa5d,2610,1}, {0xfa5e,2611,1}, {0xfa5f,2612,1}, {0xfa60,2613,1},
    {0xfa61,2614,1}, {0xfa62,2615,1}, {0xfa63,2616,1}, {0xfa64,2617,1}, {0xfa65,2618,1},
    {0xfa66,2619,1}, {0xfa67,2620,1}, {0xfa68,2621,1}, {0xfa69,2622,1}, {0xfa6a,2623,1},
    {0xfa6b,2624,1}, {0xfa6c,2625,1}, {0xfa6d,2626,1}, {0xfa70,2627,1}, {0xfa71,2628,1},
    {0xfa72,2629,1}, {0xfa73,2630,1}, {0xfa74,2631,1}, {0xfa75,2632,1}, {0xfa76,2633,1},
    {0xfa77,2634,1}, {0xfa78,2635,1}, {0xfa79,2636,1}, {0xfa7a,2637,1}, {0xfa7b,2638,1},
    {0xfa7c,2639,1}, {0xfa7d,2640,1}, {0xfa7e,2641,1}, {0xfa7f,2642,1}, {0xfa80,2643,1},
    {0xfa81,2644,1}, {0xfa82,2645,1}, {0xfa83,2646,1}, {0xfa84,2647,1}, {0xfa85,2648,1},
    {0xfa86,2649,1}, {0xfa87,2650,1}, {0xfa88,2651,1}, {0xfa89,2652,1}, {0xfa8a,2653,1},
    {0xfa8b,2654,1}, {0xfa8c,2655,1}, {0xfa8d,2656,1}, {0xfa8e,2657,1}, {0xfa8f,2658,1},
    {0xfa90,2659,1}, {0xfa91,2660,1}, {0xfa92,2661,1}, {0xfa93,2662,1}, {0xfa94,2663,1},
    {0xfa95,2664,1}, {0xfa96,2665,1}, {0xfa97,2666,1}, {0xfa98,2667,1}, {0xfa99,2668,1},
    {0xfa9a,2669,1}, {0xfa9b,2670,1}, {0xfa9c,2671,1}, {0xfa9d,2672,1}, {0xfa9e,2673,1},
    {0xfa9f,2674,1}, {0xfaa0,2675,1}, {0xfaa1,2676,1}, {0xfaa2,2677,1}, {0xfaa3,2678,1},
    {0xfaa4,2679,1}, {0xfaa5,2680,1}, {0xfaa6,2681,1}, {0xfaa7,2682,1}, {0xfaa8,2683,1},
    {0xfaa9,2684,1}, {0xfaaa,2685,1}, {0xfaab,2686,1}, {0xfaac,2687,1}, {0xfaad,2688,1},
    {0xfaae,2689,1}, {0xfaaf,2690,1}, {0xfab0,2691,1}, {0xfab1,2692,1}, {0xfab2,2693,1},
    {0xfab3,2694,1}, {0xfab4,2695,1}, {0xfab5,2696,1}, {0xfab6,2697,1}, {0xfab7,2698,1},
    {0xfab8,2699,1}, {0xfab9,2700,1}, {0xfaba,2701,1}, {0xfabb,2702,1}, {0xfabc,2703,1},
    {0xfabd,2704,1}, {0xfabe,2705,1}, {0xfabf,2706,1}, {0xfac0,2707,1}, {0xfac1,2708,1},
    {0xfac2,2709,1}, {0xfac3,2710,1}, {0xfac4,2711,1}, {0xfac5,2712,1}, {0xfac6,2713,1},
    {0xfac7,2714,1}, {0xfac8,2715,1}, {0xfac9,2716,1}, {0xfaca,2717,1}, {0xfacb,2718,1},
    {0xfacc,2719,1}, {0xfacd,2720,1}, {0xface,2721,1}, {0xfacf,2722,1}, {0xfad0,2723,1},
    {0xfad1,2724,1}, {0xfad2,2725,1}, {0xfad3,2726,1}, {0xfad4,2727,1}, {0xfad5,2728,1},
    {0xfad6,2729,1}, {0xfad7,2730,1}, {0xfad8,2731,1}, {0xfad9,2732,1}, {0xfb1d,2733,2},
    {0xfb1f,2735,2}, {0xfb2a,2737,2}, {0xfb2b,2739,2}, {0xfb2c,2741,3}, {0xfb2d,2744,3},
    {0xfb2e,2747,2}, {0xfb2f,2749,2}, {0xfb30,2751,2}, {0xfb31,2753,2}, {0xfb32,2755,2},
    {0xfb33,2757,2}, {0xfb34,2759,2}, {0xfb35,2761,2}, {0xfb36,2763,2}, {0xfb38,2765,2},
    {0xfb39,2767,2}, {0xfb3a,2769,2}, {0xfb3b,2771,2}, {0xfb3c,2773,2}, {0xfb3e,2775,2},
    {0xfb40,2777,2}, {0xfb41,2779,2}, {0xfb43,2781,2}, {0xfb44,2783,2}, {0xfb46,2785,2},
    {0xfb47,2787,2}, {0xfb48,2789,2}, {0xfb49,2791,2}, {0xfb4a,2793,2}, {0xfb4b,2795,2},
    {0xfb4c,2797,2}, {0xfb4d,2799,2}, {0xfb4e,2801,2}, {0x1109a,2803,2}, {0x1109c,2805,2},
    {0x110ab,2807,2}, {0x1112e,2809,2}, {0x1112f,2811,2}, {0x1134b,2813,2}, {0x1134c,2815,2},
    {0x114bb,2817,2}, {0x114bc,2819,2}, {0x114be,2821,2}, {0x115ba,2823,2}, {0x115bb,2825,2},
    {0x11938,2827,2}, {0x1d15e,2829,2}, {0x1d15f,2831,2}, {0x1d160,2833,3}, {0x1d161,2836,3},
    {0x1d162,2839,3}, {0x1d163,2842,3}, {0x1d164,2845,3}, {0x1d1bb,2848,2}, {0x1d1bc,2850,2},
    {0x1d1bd,2852,3}, {0x1d1be,2855,3}, {0x1d1bf,2858,3}, {0x1d1c0,2861,3}, {0x2f800,2864,1},
    {0x2f801,2865,1}, {0x2f802,2866,1}, {0x2f803,2867,1}, {0x2f804,2868,1}, {0x2f805,2869,1},
    {0x2f806,2870,1}, {0x2f807,2871,1}, {0x2f808,2872,1}, {0x2f809,2873,1}, {0x2f80a,2874,1},
    {0x2f80b,2875,1}, {0x2f80c,2876,1}, {0x2f80d,2877,1}, {0x2f80e,2878,1}, {0x2f80f,2879,1},
    {0x2f810,2880,1}, {0x2f811,2881,1}, {0x2f812,2882,1}, {0x2f813,2883,1}, {0x2f814,2884,1},
    {0x2f815,2885,1}, {0x2f816,2886,1}, {0x2f817,2887,1}, {0x2f818,2888,1}, {0x2f819,2889,1},
    {0x2f81a,2890,1}, {0x2f81b,2891,1}, {0x2f81c,2892,1}, {0x2f81d,2893,1}, {0x2f81e,2894,1},
    {0x2f81f,2895,1}, {0x2f820,2896,1}, {0x2f821,2897,1}, {0x2f822,2898,1}, {0x2f823,2899,1},
    {0x2f824,2900,1}, {0x2f825,2901,1}, {0x2f826,2902,1}, {0x2f827,2903,1}, {0x2f828,2904,1},
    {0x2f829,2905,1}, {0x2f82a,2906,1}, {0x2f82b,2907,1}, {0x2f82c,2908,1}, {0x2f82d,2909,1},
    {0x2f82e,2910,1}, {0x2f82f,2911,1}, {0x2f830,2912,1}, {0x2f831,2913,1}, {0x2f832,2914,1},
    {0x2f833,2915,1}, {0x2f834,2916,1}, {0x2f835,2917,1}, {0x2f836,2918,1}, {0x2f837,2919,1},
    {0x2f838,2920,1}, {0x2f839,2921,1}, {0x2f83a,2922,1}, {0x2f83b,2923,1}, {0x2f83c,2924,1},
    {0x2f83d,2925,1}, {0x2f83e,2926,1}, {0x2f83f,2927,1}, {0x2f840,2928,1}, {0x2f841,2929,1},
    {0x2f842,2930,1}, {0x2f843,2931,1}, {0x2f844,2932,1}, {0x2f845,2933,1}, {0x2f846,2934,1},
    {0x2f847,2935,1}, {0x2f848,2936,1}, {0x2f849,2937,1}, {0x2f84a,2938,1}, {0x2f84b,2939,1},
    {0x2f84c,2940,1}, {0x2f84d,2941,1}, {0x2f84e,2942,1}, {0x2f84f,2943,1}, {0x2f850,2944,1},
    {0x2f851,2945,1}, {0x2f852,2946,1}, {0x2f853,2947,1}, {0x2f854,2948,1}, {0x2f855,2949,1},
    {0x2f856,2950,1}, {0x2f857,2951,1}, {0x2f858,2952,1}, {0x2f859,2953,1}, {0x2f85a,2954,1},
    {0x2f85b,2955,1}, {0x2f85c,2956,1}, {0x2f85d,2957,1}, {0x2f85e,2958,1}, {0x2f85f,2959,1},
    {0x2f860,2960,1}, {0x2f861,2961,1}, {0x2f862,2962,1}, {0x2f863,2963,1}, {0x2f864,2964,1},
    {0x2f865,2965,1}, {0x2f866,2966,1}, {0x2f867,2967,1}, {0x2f868,2968,1}, {0x2f869,2969,1},
    {0x2f86a,2970,1}, {0x2f86b,2971,1}, {0x2f86c,2972,1}, {0x2f86d,2973,1}, {0x2f86e,2974,1},
    {0x2f86f,2975,1}, {0x2f870,2976,1}, {0x2f871,2977,1}, {0x2f872,2978,1}, {0x2f873,2979,1},
    {0x2f874,2980,1}, {0x2f875,2981,1}, {0x2f876,2982,1}, {0x2f877,2983,1}, {0x2f878,2984,1},
    {0x2f879,2985,1}, {0x2f87a,2986,1}, {0x2f87b,2987,1}, {0x2f87c,2988,1}, {0x2f87d,2989,1},
    {0x2f87e,2990,1}, {0x2f87f,2991,1}, {0x2f880,2992,1}, {0x2f881,2993,1}, {0x2f882,2994,1},
    {0x2f883,2995,1}, {0x2f884,2996,1}, {0x2f885,2997,1}, {0x2f886,2998,1}, {0x2f887,2999,1},
    {0x2f888,3000,1}, {0x2f889,3001,1}, {0x2f88a,3002,1}, {0x2f88b,3003,1}, {0x2f88c,3004,1},
    {0x2f88d,3005,1}, {0x2f88e,3006,1}, {0x2f88f,3007,1}, {0x2f890,3008,1}, {0x2f891,3009,1},
    {0x2f892,3010,1}, {0x2f893,3011,1}, {0x2f894,3012,1}, {0x2f895,3013,1}, {0x2f896,3014,1},
    {0x2f897,3015,1}, {0x2f898,3016,1}, {0x2f899,3017,1}, {0x2f89a,3018,1}, {0x2f89b,3019,1},
    {0x2f89c,3020,1}, {0x2f89d,3021,1}, {0x2f89e,3022,1}, {0x2f89f,3023,1}, {0x2f8a0,3024,1},
    {0x2f8a1,3025,1}, {0x2f8a2,3026,1}, {0x2f8a3,3027,1}, {0x2f8a4,3028,1}, {0x2f8a5,3029,1},
    {0x2f8a6,3030,1}, {0x2f8a7,3031,1}, {0x2f8a8,3032,1}, {0x2f8a9,3033,1}, {0x2f8aa,3034,1},
    {0x2f8ab,3035,1}, {0x2f8ac,3036,1}, {0x2f8ad,3037,1}, {0x2f8ae,3038,1}, {0x2f8af,3039,1},
    {0x2f8b0,3040,1}, {0x2f8b1,3041,1}, {0x2f8b2,3042,1}, {0x2f8b3,3043,1}, {0x2f8b4,3044,1},
    {0x2f8b5,3045,1}, {0x2f8b6,3046,1}, {0x2f8b7,3047,1}, {0x2f8b8,3048,1}, {0x2f8b9,3049,1},
    {0x2f8ba,3050,1}, {0x2f8bb,3051,1}, {0x2f8bc,3052,1}, {0x2f8bd,3053,1}, {0x2f8be,3054,1},
    {0x2f8bf,3055,1}, {0x2f8c0,3056,1}, {0x2f8c1,3057,1}, {0x2f8c2,3058,1}, {0x2f8c3,3059,1},
    {0x2f8c4,3060,1}, {0x2f8c5,3061,1}, {0x2f8c6,3062,1}, {0x2f8c7,3063,1}, {0x2f8c8,3064,1},
    {0x2f8c9,3065,1}, {0x2f8ca,3066,1}, {0x2f8cb,3067,1}, {0x2f8cc,3068,1}, {0x2f8cd,3069,1},
    {0x2f8ce,3070,1}, {0x2f8cf,3071,1}, {0x2f8d0,3072,1}, {0x2f8d1,3073,1}, {0x2f8d2,3074,1},
    {0x2f8d3,3075,1}, {0x2f8d4,3076,1}, {0x2f8d5,3077,1}, {0x2f8d6,3078,1}, {0x2f8d7,3079,1},
    {0x2f8d8,3080,1}, {0x2f8d9,3081,1}, {0x2f8da,3082,1}, {0x2f8db,3083,1}, {0x2f8dc,3084,1},
    {0x2f8dd,3085,1}, {0x2f8de,3086,1}, {0x2f8df,3087,1}, {0x2f8e0,3088,1}, {0x2f8e1,3089,1},
    {0x2f8e2,3090,1}, {0x2f8e3,3091,1}, {0x2f8e4,3092,1}, {0x2f8e5,3093,1}, {0x2f8e6,3094,1},
    {0x2f8e7,3095,1}, {0x2f8e8,3096,1}, {0x2f8e9,3097,1}, {0x2f8ea,3098,1}, {0x2f8eb,3099,1},
    {0x2f8ec,3100,1}, {0x2f8ed,3101,1}, {0x2f8ee,3102,1}, {0x2f8ef,3103,1}, {0x2f8f0,3104,1},
    {0x2f8f1,3105,1}, {0x2f8f2,3106,1}, {0x2f8f3,3107,1}, {0x2f8f4,3108,1}, {0x2f8f5,3109,1},
    {0x2f8f6,3110,1}, {0x2f8f7,3111,1}, {0x2f8f8,3112,1}, {0x2f8f9,3113,1}, {0x2f8fa,3114,1},
    {0x2f8fb,3115,1}, {0x2f8fc,3116,1}, {0x2f8fd,3117,1}, {0x2f8fe,3118,1}, {0x2f8ff,3119,1},
    {0x2f900,3120,1}, {0x2f901,3121,1}, {0x2f902,3122,1}, {0x2f903,3123,1}, {0x2f904,3124,1},
    {0x2f905,3125,1}, {0x2f906,3126,1}, {0x2f907,3127,1}, {0x2f908,3128,1}, {0x2f909,3129,1},
    {0x2f90a,3130,1}, {0x2f90b,3131,1}, {0x2f90c,3132,1}, {0x2f90d,3133,1}, {0x2f90e,3134,1},
    {0x2f90f,3135,1}, {0x2f910,3136,1}, {0x2f911,3137,1}, {0x2f912,3138,1}, {0x2f913,3139,1},
    {0x2f914,3140,1}, {0x2f915,3141,1}, {0x2f916,3142,1}, {0x2f917,3143,1}, {0x2f918,3144,1},
    {0x2f919,3145,1}, {0x2f91a,3146,1}, {0x2f91b,3147,1}, {0x2f91c,3148,1}, {0x2f91d,3149,1},
    {0x2f91e,3150,1}, {0x2f91f,3151,1}, {0x2f920,3152,1}, {0x2f921,3153,1}, {0x2f922,3154,1},
    {0x2f923,3155,1}, {0x2f924,3156,1}, {0x2f925,3157,1}, {0x2f926,3158,1}, {0x2f927,3159,1},
    {0x2f928,3160,1}, {0x2f929,3161,1}, {0x2f92a,3162,1}, {0x2f92b,3163,1}, {0x2f92c,3164,1},
    {0x2f92d,3165,1}, {0x2f92e,3166,1}, {0x2f92f,3167,1}, {0x2f930,3168,1}, {0x2f931,3169,1},
    {0x2f932,3170,1}, {0x2f933,3171,1}, {0x2f934,3172,1}, {0x2f935,3173,1}, {0x2f936,3174,1},
    {0x2f937,3175,1}, {0x2f938,3176,1}, {0x2f939,3177,1}, {0x2f93a,3178,1}, {0x2f93b,3179,1},
    {0x2f93c,3180,1}, {0x2f93d,3181,1}, {0x2f93e,3182,1}, {0x2f93f,3183,1}, {0x2f940,3184,1},
    {0x2f941,3185,1}, {0x2f942,3186,1}, {0x2f943,3187,1}, {0x2f944,3188,1}, {0x2f945,3189,1},
    {0x2f946,3190,1}, {0x2f947,3191,1}, {0x2f948,3192,1}, {0x2f949,3193,1}, {0x2f94a,3194,1},
    {0x2f94b,3195,1}, {0x2f94c,3196,1}, {0x2f94d,3197,1}, {0x2f94e,3198,1}, {0x2f94f,3199,1},
    {0x2f950,3200,1}, {0x2f951,3201,1}, {0x2f952,3202,1}, {0x2f953,3203,1}, {0x2f954,3204,1},
    {0x2f955,3205,1}, {0x2f956,3206,1}, {0x2f957,3207,1}, {0x2f958,3208,1}, {0x2f959,3209,1},
    {0x2f95a,3210,1}, {0x2f95b,3211,1}, {0x2f95c,3212,1}, {0x2f95d,3213,1}, {0x2f95e,3214,1},
    {0x2f95f,3215,1}, {0x2f960,3216,1}, {0x2f961,3217,1}, {0x2f962,3218,1}, {0x2f963,3219,1},
    {0x2f964,3220,1}, {0x2f965,3221,1}, {0x2f966,3222,1}, {0x2f967,3223,1}, {0x2f968,3224,1},
    {0x2f969,3225,1}, {0x2f96a,3226,1}, {0x2f96b,3227,1}, {0x2f96c,3228,1}, {0x2f96d,3229,1},
    {0x2f96e,3230,1}, {0x2f96f,3231,1}, {0x2f970,3232,1}, {0x2f971,3233,1}, {0x2f972,3234,1},
    {0x2f973,3235,1}, {0x2f974,3236,1}, {0x2f975,3237,1}, {0x2f976,3238,1}, {0x2f977,3239,1},
    {0x2f978,3240,1}, {0x2f979,3241,1}, {0x2f97a,3242,1}, {0x2f97b,3243,1}, {0x2f97c,3244,1},
    {0x2f97d,3245,1}, {0x2f97e,3246,1}, {0x2f97f,3247,1}, {0x2f980,3248,1}, {0x2f981,3249,1},
    {0x2f982,3250,1}, {0x2f983,3251,1}, {0x2f984,3252,1}, {0x2f985,3253,1}, {0x2f986,3254,1},
    {0x2f987,3255,1}, {0x2f988,3256,1}, {0x2f989,3257,1}, {0x2f98a,3258,1}, {0x2f98b,3259,1},
    {0x2f98c,3260,1}, {0x2f98d,3261,1}, {0x2f98e,3262,1}, {0x2f98f,3263,1}, {0x2f990,3264,1},
    {0x2f991,3265,1}, {0x2f992,3266,1}, {0x2f993,3267,1}, {0x2f994,3268,1}, {0x2f995,3269,1},
    {0x2f996,3270,1}, {0x2f997,3271,1}, {0x2f998,3272,1}, {0x2f999,3273,1}, {0x2f99a,3274,1},
    {0x2f99b,3275,1}, {0x2f99c,3276,1}, {0x2f99d,3277,1}, {0x2f99e,3278,1}, {0x2f99f,3279,1},
    {0x2f9a0,3280,1}, {0x2f9a1,3281,1}, {0x2f9a2,3282,1}, {0x2f9a3,3283,1}, {0x2f9a4,3284,1},
    {0x2f9a5,3285,1}, {0x2f9a6,3286,1}, {0x2f9a7,3287,1}, {0x2f9a8,3288,1}, {0x2f9a9,3289,1},
    {0x2f9aa,3290,1}, {0x2f9ab,3291,1}, {0x2f9ac,3292,1}, {0x2f9ad,3293,1}, {0x2f9ae,3294,1},
    {0x2f9af,3295,1}, {0x2f9b0,3296,1}, {0x2f9b1,3297,1}, {0x2f9b2,3298,1}, {0x2f9b3,3299,1},
    {0x2f9b4,3300,1}, {0x2f9b5,3301,1}, {0x2f9b6,3302,1}, {0x2f9b7,3303,1}, {0x2f9b8,3304,1},
    {0x2f9b9,3305,1}, {0x2f9ba,3306,1}, {0x2f9bb,3307,1}, {0x2f9bc,3308,1}, {0x2f9bd,3309,1},
    {0x2f9be,3310,1}, {0x2f9bf,3311,1}, {0x2f9c0,3312,1}, {0x2f9c1,3313,1}, {0x2f9c2,3314,1},
    {0x2f9c3,3315,1}, {0x2f9c4,3316,1}, {0x2f9c5,3317,1}, {0x2f9c6,3318,1}, {0x2f9c7,3319,1},
    {0x2f9c8,3320,1}, {0x2f9c9,3321,1}, {0x2f9ca,3322,1}, {0x2f9cb,3323,1}, {0x2f9cc,3324,1},
    {0x2f9cd,3325,1}, {0x2f9ce,3326,1}, {0x2f9cf,3327,1}, {0x2f9d0,3328,1}, {0x2f9d1,3329,1},
    {0x2f9d2,3330,1}, {0x2f9d3,3331,1}, {0x2f9d4,3332,1}, {0x2f9d5,3333,1}, {0x2f9d6,3334,1},
    {0x2f9d7,3335,1}, {0x2f9d8,3336,1}, {0x2f9d9,3337,1}, {0x2f9da,3338,1}, {0x2f9db,3339,1},
    {0x2f9dc,3340,1}, {0x2f9dd,3341,1}, {0x2f9de,3342,1}, {0x2f9df,3343,1}, {0x2f9e0,3344,1},
    {0x2f9e1,3345,1}, {0x2f9e2,3346,1}, {0x2f9e3,3347,1}, {0x2f9e4,3348,1}, {0x2f9e5,3349,1},
    {0x2f9e6,3350,1}, {0x2f9e7,3351,1}, {0x2f9e8,3352,1}, {0x2f9e9,3353,1}, {0x2f9ea,3354,1},
    {0x2f9eb,3355,1}, {0x2f9ec,3356,1}, {0x2f9ed,3357,1}, {0x2f9ee,3358,1}, {0x2f9ef,3359,1},
    {0x2f9f0,3360,1}, {0x2f9f1,3361,1}, {0x2f9f2,3362,1}, {0x2f9f3,3363,1}, {0x2f9f4,3364,1},
    {0x2f9f5,3365,1}, {0x2f9f6,3366,1}, {0x2f9f7,3367,1}, {0x2f9f8,3368,1}, {0x2f9f9,3369,1},
    {0x2f9fa,3370,1}, {0x2f9fb,3371,1}, {0x2f9fc,3372,1}, {0x2f9fd,3373,1}, {0x2f9fe,3374,1},
    {0x2f9ff,3375,1}, {0x2fa00,3376,1}, {0x2fa01,3377,1}, {0x2fa02,3378,1}, {0x2fa03,3379,1},
    {0x2fa04,3380,1}, {0x2fa05,3381,1}, {0x2fa06,3382,1}, {0x2fa07,3383,1}, {0x2fa08,3384,1},
    {0x2fa09,3385,1}, {0x2fa0a,3386,1}, {0x2fa0b,3387,1}, {0x2fa0c,3388,1}, {0x2fa0d,3389,1},
    {0x2fa0e,3390,1}, {0x2fa0f,3391,1}, {0x2fa10,3392,1}, {0x2fa11,3393,1}, {0x2fa12,3394,1},
    {0x2fa13,3395,1}, {0x2fa14,3396,1}, {0x2fa15,3397,1}, {0x2fa16,3398,1}, {0x2fa17,3399,1},
    {0x2fa18,3400,1}, {0x2fa19,3401,1}, {0x2fa1a,3402,1}, {0x2fa1b,3403,1}, {0x2fa1c,3404,1},
    {0x2fa1d,3405,1},
};
const std::size_t kDecompEntryCount = 2061;

const char32_t kDecompPool[] = {
    0x41, 0x300, 0x41, 0x301, 0x41, 0x302, 0x41, 0x303, 0x41, 0x308,
    0x41, 0x30a, 0x43, 0x327, 0x45, 0x300, 0x45, 0x301, 0x45, 0x302,
    0x45, 0x308, 0x49, 0x300, 0x49, 0x301, 0x49, 0x302, 0x49, 0x308,
    0x4e, 0x303, 0x4f, 0x300, 0x4f, 0x301, 0x4f, 0x302, 0x4f, 0x303,
    0x4f, 0x308, 0x55, 0x300, 0x55, 0x301, 0x55, 0x302, 0x55, 0x308,
    0x59, 0x301, 0x61, 0x300, 0x61, 0x301, 0x61, 0x302, 0x61, 0x303,
    0x61, 0x308, 0x61, 0x30a, 0x63, 0x327, 0x65, 0x300, 0x65, 0x301,
    0x65, 0x302, 0x65, 0x308, 0x69, 0x300, 0x69, 0x301, 0x69, 0x302,
    0x69, 0x308, 0x6e, 0x303, 0x6f, 0x300, 0x6f, 0x301, 0x6f, 0x302,
    0x6f, 0x303, 0x6f, 0x308, 0x75, 0x300, 0x75, 0x301, 0x75, 0x302,
    0x75, 0x308, 0x79, 0x301, 0x79, 0x308, 0x41, 0x304, 0x61, 0x304,
    0x41, 0x306, 0x61, 0x306, 0x41, 0x328, 0x61, 0x328, 0x43, 0x301,
    0x63, 0x301, 0x43, 0x302, 0x63, 0x302, 0x43, 0x307, 0x63, 0x307,
    0x43, 0x30c, 0x63, 0x30c, 0x44, 0x30c, 0x64, 0x30c, 0x45, 0x304,
    0x65, 0x304, 0x45, 0x306, 0x65, 0x306, 0x45, 0x307, 0x65, 0x307,
    0x45, 0x328, 0x65, 0x328, 0x45, 0x30c, 0x65, 0x30c, 0x47, 0x302,
    0x67, 0x302, 0x47, 0x306, 0x67, 0x306, 0x47, 0x307, 0x67, 0x307,
    0x47, 0x327, 0x67, 0x327, 0x48, 0x302, 0x68, 0x302, 0x49, 0x303,
    0x69, 0x303, 0x49, 0x304, 0x69, 0x304, 0x49, 0x306, 0x69, 0x306,
    0x49, 0x328, 0x69, 0x328, 0x49, 0x307, 0x4a, 0x302, 0x6a, 0x302,
    0x4b, 0x327, 0x6b, 0x327, 0x4c, 0x301, 0x6c, 0x301, 0x4c, 0x327,
    0x6c, 0x327, 0x4c, 0x30c, 0x6c, 0x30c, 0x4e, 0x301, 0x6e, 0x301,
    0x4e, 0x327, 0x6e, 0x327, 0x4e, 0x30c, 0x6e, 0x30c, 0x4f, 0x304,
    0x6f, 0x304, 0x4f, 0x306, 0x6f, 0x306, 0x4f, 0x30b, 0x6f, 0x30b,
    0x52, 0x301, 0x72, 0x301, 0x52, 0x327, 0x72, 0x327, 0x52, 0x30c,
    0x72, 0x30c, 0x53, 0x301, 0x73, 0x301, 0x53, 0x302, 0x73, 0x302,
    0x53, 0x327, 0x73, 0x327, 0x53, 0x30c, 0x73, 0x30c, 0x54, 0x327,
    0x74, 0x327, 0x54, 0x30c, 0x74, 0x30c, 0x55, 0x303, 0x75, 0x303,
    0x55, 0x304, 0x75, 0x304, 0x55, 0x306, 0x75, 0x306, 0x55, 0x30a,
    0x75, 0x30a, 0x55, 0x30b, 0x75, 0x30b, 0x55, 0x328, 0x75, 0x328,
    0x57, 0x302, 0x77, 0x302, 0x59, 0x302, 0x79, 0x302, 0x59, 0x308,
    0x5a, 0x301, 0x7a, 0x301, 0x5a, 0x307, 0x7a, 0x307, 0x5a, 0x30c,
    0x7a, 0x30c, 0x4f, 0x31b, 0x6f, 0x31b, 0x55, 0x31b, 0x75, 0x31b,
    0x41, 0x30c, 0x61, 0x30c, 0x49, 0x30c, 0x69, 0x30c, 0x4f, 0x30c,
    0x6f, 0x30c, 0x55, 0x30c, 0x75, 0x30c, 0x55, 0x308, 0x304, 0x75,
    0x308, 0x304, 0x55, 0x308, 0x301, 0x75, 0x308, 0x301, 0x55, 0x308,
    0x30c, 0x75, 0x308, 0x30c, 0x55, 0x308, 0x300, 0x75, 0x308, 0x300,
    0x41, 0x308, 0x304, 0x61, 0x308, 0x304, 0x41, 0x307, 0x304, 0x61,
    0x307, 0x304, 0xc6, 0x304, 0xe6, 0x304, 0x47, 0x30c, 0x67, 0x30c,
    0x4b, 0x30c, 0x6b, 0x30c, 0x4f, 0x328, 0x6f, 0x328, 0x4f, 0x328,
    0x304, 0x6f, 0x328, 0x304, 0x1b7, 0x30c, 0x292, 0x30c, 0x6a, 0x30c,
    0x47, 0x301, 0x67, 0x301, 0x4e, 0x300, 0x6e, 0x300, 0x41, 0x30a,
    0x301, 0x61, 0x30a, 0x301, 0xc6, 0x301, 0xe6, 0x301, 0xd8, 0x301,
    0xf8, 0x301, 0x41, 0x30f, 0x61, 0x30f, 0x41, 0x311, 0x61, 0x311,
    0x45, 0x30f, 0x65, 0x30f, 0x45, 0x311, 0x65, 0x311, 0x49, 0x30f,
    0x69, 0x30f, 0x49, 0x311, 0x69, 0x311, 0x4f, 0x30f, 0x6f, 0x30f,
    0x4f, 0x311, 0x6f, 0x311, 0x52, 0x30f, 0x72, 0x30f, 0x52, 0x311,
    0x72, 0x311, 0x55, 0x30f, 0x75, 0x30f, 0x55, 0x311, 0x75, 0x311,
    0x53, 0x326, 0x73, 0x326, 0x54, 0x326, 0x74, 0x326, 0x48, 0x30c,
    0x68, 0x30c, 0x41, 0x307, 0x61, 0x307, 0x45, 0x327, 0x65, 0x327,
    0x4f, 0x308, 0x304, 0x6f, 0x308, 0x304, 0x4f, 0x303, 0x304, 0x6f,
    0x303, 0x304, 0x4f, 0x307, 0x6f, 0x307, 0x4f, 0x307, 0x304, 0x6f,
    0x307, 0x304, 0x59, 0x304, 0x79, 0x304, 0x300, 0x301, 0x313, 0x308,
    0x301, 0x2b9, 0x3b, 0xa8, 0x301, 0x391, 0x301, 0xb7, 0x395, 0x301,
    0x397, 0x301, 0x399, 0x301, 0x39f, 0x301, 0x3a5, 0x301, 0x3a9, 0x301,
    0x3b9, 0x308, 0x301, 0x399, 0x308, 0x3a5, 0x308, 0x3b1, 0x301, 0x3b5,
    0x301, 0x3b7, 0x301, 0x3b9, 0x301, 0x3c5, 0x308, 0x301, 0x3b9, 0x308,
    0x3c5, 0x308, 0x3bf, 0x301, 0x3c5, 0x301, 0x3c9, 0x301, 0x3d2, 0x301,
    0x3d2, 0x308, 0x415, 0x300, 0x415, 0x308, 0x413, 0x301, 0x406, 0x308,
    0x41a, 0x301, 0x418, 0x300, 0x423, 0x306, 0x418, 0x306, 0x438, 0x306,
    0x435, 0x300, 0x435, 0x308, 0x433, 0x301, 0x456, 0x308, 0x43a, 0x301,
    0x438, 0x300, 0x443, 0x306, 0x474, 0x30f, 0x475, 0x30f, 0x416, 0x306,
    0x436, 0x306, 0x410, 0x306, 0x430, 0x306, 0x410, 0x308, 0x430, 0x308,
    0x415, 0x306, 0x435, 0x306, 0x4d8, 0x308, 0x4d9, 0x308, 0x416, 0x308,
    0x436, 0x308, 0x417, 0x308, 0x437, 0x308, 0x418, 0x304, 0x438, 0x304,
    0x418, 0x308, 0x438, 0x308, 0x41e, 0x308, 0x43e, 0x308, 0x4e8, 0x308,
    0x4e9, 0x308, 0x42d, 0x308, 0x44d, 0x308, 0x423, 0x304, 0x443, 0x304,
    0x423, 0x308, 0x443, 0x308, 0x423, 0x30b, 0x443, 0x30b, 0x427, 0x308,
    0x447, 0x308, 0x42b, 0x308, 0x44b, 0x308, 0x627, 0x653, 0x627, 0x654,
    0x648, 0x654, 0x627, 0x655, 0x64a, 0x654, 0x6d5, 0x654, 0x6c1, 0x654,
    0x6d2, 0x654, 0x928, 0x93c, 0x930, 0x93c, 0x933, 0x93c, 0x915, 0x93c,
    0x916, 0x93c, 0x917, 0x93c, 0x91c, 0x93c, 0x921, 0x93c, 0x922, 0x93c,
    0x92b, 0x93c, 0x92f, 0x93c, 0x9c7, 0x9be, 0x9c7, 0x9d7, 0x9a1, 0x9bc,
    0x9a2, 0x9bc, 0x9af, 0x9bc, 0xa32, 0xa3c, 0xa38, 0xa3c, 0xa16, 0xa3c,
    0xa17, 0xa3c, 0xa1c, 0xa3c, 0xa2b, 0xa3c, 0xb47, 0xb56, 0xb47, 0xb3e,
    0xb47, 0xb57, 0xb21, 0xb3c, 0xb22, 0xb3c, 0xb92, 0xbd7, 0xbc6, 0xbbe,
    0xbc7, 0xbbe, 0xbc6, 0xbd7, 0xc46, 0xc56, 0xcbf, 0xcd5, 0xcc6, 0xcd5,
    0xcc6, 0xcd6, 0xcc6, 0xcc2, 0xcc6, 0xcc2, 0xcd5, 0xd46, 0xd3e, 0xd47,
    0xd3e, 0xd46, 0xd57, 0xdd9, 0xdca, 0xdd9, 0xdcf, 0xdd9, 0xdcf, 0xdca,
    0xdd9, 0xddf, 0xf42, 0xfb7, 0xf4c, 0xfb7, 0xf51, 0xfb7, 0xf56, 0xfb7,
    0xf5b, 0xfb7, 0xf40, 0xfb5, 0xf71, 0xf72, 0xf71, 0xf74, 0xfb2, 0xf80,
    0xfb3, 0xf80, 0xf71, 0xf80, 0xf92, 0xfb7, 0xf9c, 0xfb7, 0xfa1, 0xfb7,
    0xfa6, 0xfb7, 0xfab, 0xfb7, 0xf90, 0xfb5, 0x1025, 0x102e, 0x1b05, 0x1b35,
    0x1b07, 0x1b35, 0x1b09, 0x1b35, 0x1b0b, 0x1b35, 0x1b0d, 0x1b35, 0x1b11, 0x1b35,
    0x1b3a, 0x1b35, 0x1b3c, 0x1b35, 0x1b3e, 0x1b35, 0x1b3f, 0x1b35, 0x1b42, 0x1b35,
    0x41, 0x325, 0x61, 0x325, 0x42, 0x307, 0x62, 0x307, 0x42, 0x323,
    0x62, 0x323, 0x42, 0x331, 0x62, 0x331, 0x43, 0x327, 0x301, 0x63,
    0x327, 0x301, 0x44, 0x307, 0x64, 0x307, 0x44, 0x323, 0x64, 0x323,
    0x44, 0x331, 0x64, 0x331, 0x44, 0x327, 0x64, 0x327, 0x44, 0x32d,
    0x64, 0x32d, 0x45, 0x304, 0x300, 0x65, 0x304, 0x300, 0x45, 0x304,
    0x301, 0x65, 0x304, 0x301, 0x45, 0x32d, 0x65, 0x32d, 0x45, 0x330,
    0x65, 0x330, 0x45, 0x327, 0x306, 0x65, 0x327, 0x306, 0x46, 0x307,
    0x66, 0x307, 0x47, 0x304, 0x67, 0x304, 0x48, 0x307, 0x68, 0x307,
    0x48, 0x323, 0x68, 0x323, 0x48, 0x308, 0x68, 0x308, 0x48, 0x327,
    0x68, 0x327, 0x48, 0x32e, 0x68, 0x32e, 0x49, 0x330, 0x69, 0x330,
    0x49, 0x308, 0x301, 0x69, 0x308, 0x301, 0x4b, 0x301, 0x6b, 0x301,
    0x4b, 0x323, 0x6b, 0x323, 0x4b, 0x331, 0x6b, 0x331, 0x4c, 0x323,
    0x6c, 0x323, 0x4c, 0x323, 0x304, 0x6c, 0x323, 0x304, 0x4c, 0x331,
    0x6c, 0x331, 0x4c, 0x32d, 0x6c, 0x32d, 0x4d, 0x301, 0x6d, 0x301,
    0x4d, 0x307, 0x6d, 0x307, 0x4d, 0x323, 0x6d, 0x323, 0x4e, 0x307,
    0x6e, 0x307, 0x4e, 0x323, 0x6e, 0x323, 0x4e, 0x331, 0x6e, 0x331,
    0x4e, 0x32d, 0x6e, 0x32d, 0x4f, 0x303, 0x301, 0x6f, 0x303, 0x301,
    0x4f, 0x303, 0x308, 0x6f, 0x303, 0x308, 0x4f, 0x304, 0x300, 0x6f,
    0x304, 0x300, 0x4f, 0x304, 0x301, 0x6f, 0x304, 0x301, 0x50, 0x301,
    0x70, 0x301, 0x50, 0x307, 0x70, 0x307, 0x52, 0x307, 0x72, 0x307,
    0x52, 0x323, 0x72, 0x323, 0x52, 0x323, 0x304, 0x72, 0x323, 0x304,
    0x52, 0x331, 0x72, 0x331, 0x53, 0x307, 0x73, 0x307, 0x53, 0x323,
    0x73, 0x323, 0x53, 0x301, 0x307, 0x73, 0x301, 0x307, 0x53, 0x30c,
    0x307, 0x73, 0x30c, 0x307, 0x53, 0x323, 0x307, 0x73, 0x323, 0x307,
    0x54, 0x307, 0x74, 0x307, 0x54, 0x323, 0x74, 0x323, 0x54, 0x331,
    0x74, 0x331, 0x54, 0x32d, 0x74, 0x32d, 0x55, 0x324, 0x75, 0x324,
    0x55, 0x330, 0x75, 0x330, 0x55, 0x32d, 0x75, 0x32d, 0x55, 0x303,
    0x301, 0x75, 0x303, 0x301, 0x55, 0x304, 0x308, 0x75, 0x304, 0x308,
    0x56, 0x303, 0x76, 0x303, 0x56, 0x323, 0x76, 0x323, 0x57, 0x300,
    0x77, 0x300, 0x57, 0x301, 0x77, 0x301, 0x57, 0x308, 0x77, 0x308,
    0x57, 0x307, 0x77, 0x307, 0x57, 0x323, 0x77, 0x323, 0x58, 0x307,
    0x78, 0x307, 0x58, 0x308, 0x78, 0x308, 0x59, 0x307, 0x79, 0x307,
    0x5a, 0x302, 0x7a, 0x302, 0x5a, 0x323, 0x7a, 0x323, 0x5a, 0x331,
    0x7a, 0x331, 0x68, 0x331, 0x74, 0x308, 0x77, 0x30a, 0x79, 0x30a,
    0x17f, 0x307, 0x41, 0x323, 0x61, 0x323, 0x41, 0x309, 0x61, 0x309,
    0x41, 0x302, 0x301, 0x61, 0x302, 0x301, 0x41, 0x302, 0x300, 0x61,
    0x302, 0x300, 0x41, 0x302, 0x309, 0x61, 0x302, 0x309, 0x41, 0x302,
    0x303, 0x61, 0x302, 0x303, 0x41, 0x323, 0x302, 0x61, 0x323, 0x302,
    0x41, 0x306, 0x301, 0x61, 0x306, 0x301, 0x41, 0x306, 0x300, 0x61,
    0x306, 0x300, 0x41, 0x306, 0x309, 0x61, 0x306, 0x309, 0x41, 0x306,
    0x303, 0x61, 0x306, 0x303, 0x41, 0x323, 0x306, 0x61, 0x323, 0x306,
    0x45, 0x323, 0x65, 0x323, 0x45, 0x309, 0x65, 0x309, 0x45, 0x303,
    0x65, 0x303, 0x45, 0x302, 0x301, 0x65, 0x302, 0x301, 0x45, 0x302,
    0x300, 0x65, 0x302, 0x300, 0x45, 0x302, 0x309, 0x65, 0x302, 0x309,
    0x45, 0x302, 0x303, 0x65, 0x302, 0x303, 0x45, 0x323, 0x302, 0x65,
    0x323, 0x302, 0x49, 0x309, 0x69, 0x309, 0x49, 0x323, 0x69, 0x323,
    0x4f, 0x323, 0x6f, 0x323, 0x4f, 0x309, 0x6f, 0x309, 0x4f, 0x302,
    0x301, 0x6f, 0x302, 0x301, 0x4f, 0x302, 0x300, 0x6f, 0x302, 0x300,
    0x4f, 0x302, 0x309, 0x6f, 0x302, 0x309, 0x4f, 0x302, 0x303, 0x6f,
    0x302, 0x303, 0x4f, 0x323, 0x302, 0x6f, 0x323, 0x302, 0x4f, 0x31b,
    0x301, 0x6f, 0x31b, 0x301, 0x4f, 0x31b, 0x300, 0x6f, 0x31b, 0x300,
    0x4f, 0x31b, 0x309, 0x6f, 0x31b, 0x309, 0x4f, 0x31b, 0x303, 0x6f,
    0x31b, 0x303, 0x4f, 0x31b, 0x323, 0x6f, 0x31b, 0x323, 0x55, 0x323,
    0x75, 0x323, 0x55, 0x309, 0x75, 0x309, 0x55, 0x31b, 0x301, 0x75,
    0x31b, 0x301, 0x55, 0x31b, 0x300, 0x75, 0x31b, 0x300, 0x55, 0x31b,
    0x309, 0x75, 0x31b, 0x309, 0x55, 0x31b, 0x303, 0x75, 0x31b, 0x303,
    0x55, 0x31b, 0x323, 0x75, 0x31b, 0x323, 0x59, 0x300, 0x79, 0x300,
    0x59, 0x323, 0x79, 0x323, 0x59, 0x309, 0x79, 0x309, 0x59, 0x303,
    0x79, 0x303, 0x3b1, 0x313, 0x3b1, 0x314, 0x3b1, 0x313, 0x300, 0x3b1,
    0x314, 0x300, 0x3b1, 0x313, 0x301, 0x3b1, 0x314, 0x301, 0x3b1, 0x313,
    0x342, 0x3b1, 0x314, 0x342, 0x391, 0x313, 0x391, 0x314, 0x391, 0x313,
    0x300, 0x391, 0x314, 0x300, 0x391, 0x313, 0x301, 0x391, 0x314, 0x301,
    0x391, 0x313, 0x342, 0x391, 0x314, 0x342, 0x3b5, 0x313, 0x3b5, 0x314,
    0x3b5, 0x313, 0x300, 0x3b5, 0x314, 0x300, 0x3b5, 0x313, 0x301, 0x3b5,
    0x314, 0x301, 0x395, 0x313, 0x395, 0x314, 0x395, 0x313, 0x300, 0x395,
    0x314, 0x300, 0x395, 0x313, 0x301, 0x395, 0x314, 0x301, 0x3b7, 0x313,
    0x3b7, 0x314, 0x3b7, 0x313, 0x300, 0x3b7, 0x314, 0x300, 0x3b7, 0x313,
    0x301, 0x3b7, 0x314, 0x301, 0x3b7, 0x313, 0x342, 0x3b7, 0x314, 0x342,
    0x397, 0x313, 0x397, 0x314, 0x397, 0x313, 0x300, 0x397, 0x314, 0x300,
    0x397, 0x313, 0x301, 0x397, 0x314, 0x301, 0x397, 0x313, 0x342, 0x397,
    0x314, 0x342, 0x3b9, 0x313, 0x3b9, 0x314, 0x3b9, 0x313, 0x300, 0x3b9,
    0x314, 0x300, 0x3b9, 0x313, 0x301, 0x3b9, 0x314, 0x301, 0x3b9, 0x313,
    0x342, 0x3b9, 0x314, 0x342, 0x399, 0x313, 0x399, 0x314, 0x399, 0x313,
    0x300, 0x399, 0x314, 0x300, 0x399, 0x313, 0x301, 0x399, 0x314, 0x301,
    0x399, 0x313, 0x342, 0x399, 0x314, 0x342, 0x3bf, 0x313, 0x3bf, 0x314,
    0x3bf, 0x313, 0x300, 0x3bf, 0x314, 0x300, 0x3bf, 0x313, 0x301, 0x3bf,
    0x314, 0x301, 0x39f, 0x313, 0x39f, 0x314, 0x39f, 0x313, 0x300, 0x39f,
    0x314, 0x300, 0x39f, 0x313, 0x301, 0x39f, 0x314, 0x301, 0x3c5, 0x313,
    0x3c5, 0x314, 0x3c5, 0x313, 0x300, 0x3c5, 0x314, 0x300, 0x3c5, 0x313,
    0x301, 0x3c5, 0x314, 0x301, 0x3c5, 0x313, 0x342, 0x3c5, 0x314, 0x342,
    0x3a5, 0x314, 0x3a5, 0x314, 0x300, 0x3a5, 0x314, 0x301, 0x3a5, 0x314,
    0x342, 0x3c9, 0x313, 0x3c9, 0x314, 0x3c9, 0x313, 0x300, 0x3c9, 0x314,
    0x300, 0x3c9, 0x313, 0x301, 0x3c9, 0x314, 0x301, 0x3c9, 0x313, 0x342,
    0x3c9, 0x314, 0x342, 0x3a9, 0x313, 0x3a9, 0x314, 0x3a9, 0x313, 0x300,
    0x3a9, 0x314, 0x300, 0x3a9, 0x313, 0x301, 0x3a9, 0x314, 0x301, 0x3a9,
    0x313, 0x342, 0x3a9, 0x314, 0x342, 0x3b1, 0x300, 0x3b1, 0x301, 0x3b5,
    0x300, 0x3b5, 0x301, 0x3b7, 0x300, 0x3b7, 0x301, 0x3b9, 0x300, 0x3b9,
    0x301, 0x3bf, 0x300, 0x3bf, 0x301, 0x3c5, 0x300, 0x3c5, 0x301, 0x3c9,
    0x300, 0x3c9, 0x301, 0x3b1, 0x313, 0x345, 0x3b1, 0x314, 0x345, 0x3b1,
    0x313, 0x300, 0x345, 0x3b1, 0x314, 0x300, 0x345, 0x3b1, 0x313, 0x301,
    0x345, 0x3b1, 0x314, 0x301, 0x345, 0x3b1, 0x313, 0x342, 0x345, 0x3b1,
    0x314, 0x342, 0x345, 0x391, 0x313, 0x345, 0x391, 0x314, 0x345, 0x391,
    0x313, 0x300, 0x345, 0x391, 0x314, 0x300, 0x345, 0x391, 0x313, 0x301,
    0x345, 0x391, 0x314, 0x301, 0x345, 0x391, 0x313, 0x342, 0x345, 0x391,
    0x314, 0x342, 0x345, 0x3b7, 0x313, 0x345, 0x3b7, 0x314, 0x345, 0x3b7,
    0x313, 0x300, 0x345, 0x3b7, 0x314, 0x300, 0x345, 0x3b7, 0x313, 0x301,
    0x345, 0x3b7, 0x314, 0x301, 0x345, 0x3b7, 0x313, 0x342, 0x345, 0x3b7,
    0x314, 0x342, 0x345, 0x397, 0x313, 0x345, 0x397, 0x314, 0x345, 0x397,
    0x313, 0x300, 0x345, 0x397, 0x314, 0x300, 0x345, 0x397, 0x313, 0x301,
    0x345, 0x397, 0x314, 0x301, 0x345, 0x397, 0x313, 0x342, 0x345, 0x397,
    0x314, 0x342, 0x345, 0x3c9, 0x313, 0x345, 0x3c9, 0x314, 0x345, 0x3c9,
    0x313, 0x300, 0x345, 0x3c9, 0x314, 0x300, 0x345, 0x3c9, 0x313, 0x301,
    0x345, 0x3c9, 0x314, 0x301, 0x345, 0x3c9, 0x313, 0x342, 0x345, 0x3c9,
    0x314, 0x342, 0x345, 0x3a9, 0x313, 0x345, 0x3a9, 0x314, 0x345, 0x3a9,
    0x313, 0x300, 0x345, 0x3a9, 0x314, 0x300, 0x345, 0x3a9, 0x313, 0x301,
    0x345, 0x3a9, 0x314, 0x301, 0x345, 0x3a9, 0x313, 0x342, 0x345, 0x3a9,
    0x314, 0x342, 0x345, 0x3b1, 0x306, 0x3b1, 0x304, 0x3b1, 0x300, 0x345,
    0x3b1, 0x345, 0x3b1, 0x301, 0x345, 0x3b1, 0x342, 0x3b1, 0x342, 0x345,
    0x391, 0x306, 0x391, 0x304, 0x391, 0x300, 0x391, 0x301, 0x391, 0x345,
    0x3b9, 0xa8, 0x342, 0x3b7, 0x300, 0x345, 0x3b7, 0x345, 0x3b7, 0x301,
    0x345, 0x3b7, 0x342, 0x3b7, 0x342, 0x345, 0x395, 0x300, 0x395, 0x301,
    0x397, 0x300, 0x397, 0x301, 0x397, 0x345, 0x1fbf, 0x300, 0x1fbf, 0x301,
    0x1fbf, 0x342, 0x3b9, 0x306, 0x3b9, 0x304, 0x3b9, 0x308, 0x300, 0x3b9,
    0x308, 0x301, 0x3b9, 0x342, 0x3b9, 0x308, 0x342, 0x399, 0x306, 0x399,
    0x304, 0x399, 0x300, 0x399, 0x301, 0x1ffe, 0x300, 0x1ffe, 0x301, 0x1ffe,
    0x342, 0x3c5, 0x306, 0x3c5, 0x304, 0x3c5, 0x308, 0x300, 0x3c5, 0x308,
    0x301, 0x3c1, 0x313, 0x3c1, 0x314, 0x3c5, 0x342, 0x3c5, 0x308, 0x342,
    0x3a5, 0x306, 0x3a5, 0x304, 0x3a5, 0x300, 0x3a5, 0x301, 0x3a1, 0x314,
    0xa8, 0x300, 0xa8, 0x301, 0x60, 0x3c9, 0x300, 0x345, 0x3c9, 0x345,
    0x3c9, 0x301, 0x345, 0x3c9, 0x342, 0x3c9, 0x342, 0x345, 0x39f, 0x300,
    0x39f, 0x301, 0x3a9, 0x300, 0x3a9, 0x301, 0x3a9, 0x345, 0xb4, 0x2002,
    0x2003, 0x3a9, 0x4b, 0x41, 0x30a, 0x2190, 0x338, 0x2192, 0x338, 0x2194,
    0x338, 0x21d0, 0x338, 0x21d4, 0x338, 0x21d2, 0x338, 0x2203, 0x338, 0x2208,
    0x338, 0x220b, 0x338, 0x2223, 0x338, 0x2225, 0x338, 0x223c, 0x338, 0x2243,
    0x338, 0x2245, 0x338, 0x2248, 0x338, 0x3d, 0x338, 0x2261, 0x338, 0x224d,
    0x338, 0x3c, 0x338, 0x3e, 0x338, 0x2264, 0x338, 0x2265, 0x338, 0x2272,
    0x338, 0x2273, 0x338, 0x2276, 0x338, 0x2277, 0x338, 0x227a, 0x338, 0x227b,
    0x338, 0x2282, 0x338, 0x2283, 0x338, 0x2286, 0x338, 0x2287, 0x338, 0x22a2,
    0x338, 0x22a8, 0x338, 0x22a9, 0x338, 0x22ab, 0x338, 0x227c, 0x338, 0x227d,
    0x338, 0x2291, 0x338, 0x2292, 0x338, 0x22b2, 0x338, 0x22b3, 0x338, 0x22b4,
    0x338, 0x22b5, 0x338, 0x3008, 0x3009, 0x2add, 0x338, 0x304b, 0x3099, 0x304d,
    0x3099, 0x304f, 0x3099, 0x3051, 0x3099, 0x3053, 0x3099, 0x3055, 0x3099, 0x3057,
    0x3099, 0x3059, 0x3099, 0x305b, 0x3099, 0x305d, 0x3099, 0x305f, 0x3099, 0x3061,
    0x3099, 0x3064, 0x3099, 0x3066, 0x3099, 0x3068, 0x3099, 0x306f, 0x3099, 0x306f,
    0x309a, 0x3072, 0x3099, 0x3072, 0x309a, 0x3075, 0x3099, 0x3075, 0x309a, 0x3078,
    0x3099, 0x3078, 0x309a, 0x307b, 0x3099, 0x307b, 0x309a, 0x3046, 0x3099, 0x309d,
    0x3099, 0x30ab, 0x3099, 0x30ad, 0x3099, 0x30af, 0x3099, 0x30b1, 0x3099, 0x30b3,
    0x3099, 0x30b5, 0x3099, 0x30b7, 0x3099, 0x30b9, 0x3099, 0x30bb, 0x3099, 0x30bd,
    0x3099, 0x30bf, 0x3099, 0x30c1, 0x3099, 0x30c4, 0x3099, 0x30c6, 0x3099, 0x30c8,
    0x3099, 0x30cf, 0x3099, 0x30cf, 0x309a, 0x30d2, 0x3099, 0x30d2, 0x309a, 0x30d5,
    0x3099, 0x30d5, 0x309a, 0x30d8, 0x3099, 0x30d8, 0x309a, 0x30db, 0x3099, 0x30db,
    0x309a, 0x30a6, 0x3099, 0x30ef, 0x3099, 0x30f0, 0x3099, 0x30f1, 0x3099, 0x30f2,
    0x3099, 0x30fd, 0x3099, 0x8c48, 0x66f4, 0x8eca, 0x8cc8, 0x6ed1, 0x4e32, 0x53e5,
    0x9f9c, 0x9f9c, 0x5951, 0x91d1, 0x5587, 0x5948, 0x61f6, 0x7669, 0x7f85, 0x863f,
    0x87ba, 0x88f8, 0x908f, 0x6a02, 0x6d1b, 0x70d9, 0x73de, 0x843d, 0x916a, 0x99f1,
    0x4e82, 0x5375, 0x6b04, 0x721b, 0x862d, 0x9e1e, 0x5d50, 0x6feb, 0x85cd, 0x8964,
    0x62c9, 0x81d8, 0x881f, 0x5eca, 0x6717, 0x6d6a, 0x72fc, 0x90ce, 0x4f86, 0x51b7,
    0x52de, 0x64c4, 0x6ad3, 0x7210, 0x76e7, 0x8001, 0x8606, 0x865c, 0x8def, 0x9732,
    0x9b6f, 0x9dfa, 0x788c, 0x797f, 0x7da0, 0x83c9, 0x9304, 0x9e7f, 0x8ad6, 0x58df,
    0x5f04, 0x7c60, 0x807e, 0x7262, 0x78ca, 0x8cc2, 0x96f7, 0x58d8, 0x5c62, 0x6a13,
    0x6dda, 0x6f0f, 0x7d2f, 0x7e37, 0x964b, 0x52d2, 0x808b, 0x51dc, 0x51cc, 0x7a1c,
    0x7dbe, 0x83f1, 0x9675, 0x8b80, 0x62cf, 0x6a02, 0x8afe, 0x4e39, 0x5be7, 0x6012,
    0x7387, 0x7570, 0x5317, 0x78fb, 0x4fbf, 0x5fa9, 0x4e0d, 0x6ccc, 0x6578, 0x7d22,
    0x53c3, 0x585e, 0x7701, 0x8449, 0x8aaa, 0x6bba, 0x8fb0, 0x6c88, 0x62fe, 0x82e5,
    0x63a0, 0x7565, 0x4eae, 0x5169, 0x51c9, 0x6881, 0x7ce7, 0x826f, 0x8ad2, 0x91cf,
    0x52f5, 0x5442, 0x5973, 0x5eec, 0x65c5, 0x6ffe, 0x792a, 0x95ad, 0x9a6a, 0x9e97,
    0x9ece, 0x529b, 0x66c6, 0x6b77, 0x8f62, 0x5e74, 0x6190, 0x6200, 0x649a, 0x6f23,
    0x7149, 0x7489, 0x79ca, 0x7df4, 0x806f, 0x8f26, 0x84ee, 0x9023, 0x934a, 0x5217,
    0x52a3, 0x54bd, 0x70c8, 0x88c2, 0x8aaa, 0x5ec9, 0x5ff5, 0x637b, 0x6bae, 0x7c3e,
    0x7375, 0x4ee4, 0x56f9, 0x5be7, 0x5dba, 0x601c, 0x73b2, 0x7469, 0x7f9a, 0x8046,
    0x9234, 0x96f6, 0x9748, 0x9818, 0x4f8b, 0x79ae, 0x91b4, 0x96b8, 0x60e1, 0x4e86,
    0x50da, 0x5bee, 0x5c3f, 0x6599, 0x6a02, 0x71ce, 0x7642, 0x84fc, 0x907c, 0x9f8d,
    0x6688, 0x962e, 0x5289, 0x677b, 0x67f3, 0x6d41, 0x6e9c, 0x7409, 0x7559, 0x786b,
    0x7d10, 0x985e, 0x516d, 0x622e, 0x9678, 0x502b, 0x5d19, 0x6dea, 0x8f2a, 0x5f8b,
    0x6144, 0x6817, 0x7387, 0x9686, 0x5229, 0x540f, 0x5c65, 0x6613, 0x674e, 0x68a8,
    0x6ce5, 0x7406, 0x75e2, 0x7f79, 0x88cf, 0x88e1, 0x91cc, 0x96e2, 0x533f, 0x6eba,
    0x541d, 0x71d0, 0x7498, 0x85fa, 0x96a3, 0x9c57, 0x9e9f, 0x6797, 0x6dcb, 0x81e8,
    0x7acb, 0x7b20, 0x7c92, 0x72c0, 0x7099, 0x8b58, 0x4ec0, 0x8336, 0x523a, 0x5207,
    0x5ea6, 0x62d3, 0x7cd6, 0x5b85, 0x6d1e, 0x66b4, 0x8f3b, 0x884c, 0x964d, 0x898b,
    0x5ed3, 0x5140, 0x55c0, 0x585a, 0x6674, 0x51de, 0x732a, 0x76ca, 0x793c, 0x795e,
    0x7965, 0x798f, 0x9756, 0x7cbe, 0x7fbd, 0x8612, 0x8af8, 0x9038, 0x90fd, 0x98ef,
    0x98fc, 0x9928, 0x9db4, 0x90de, 0x96b7, 0x4fae, 0x50e7, 0x514d, 0x52c9, 0x52e4,
    0x5351, 0x559d, 0x5606, 0x5668, 0x5840, 0x58a8, 0x5c64, 0x5c6e, 0x6094, 0x6168,
    0x618e, 0x61f2, 0x654f, 0x65e2, 0x6691, 0x6885, 0x6d77, 0x6e1a, 0x6f22, 0x716e,
    0x722b, 0x7422, 0x7891, 0x793e, 0x7949, 0x7948, 0x7950, 0x7956, 0x795d, 0x798d,
    0x798e, 0x7a40, 0x7a81, 0x7bc0, 0x7df4, 0x7e09, 0x7e41, 0x7f72, 0x8005, 0x81ed,
    0x8279, 0x8279, 0x8457, 0x8910, 0x8996, 0x8b01, 0x8b39, 0x8cd3, 0x8d08, 0x8fb6,
    0x9038, 0x96e3, 0x97ff, 0x983b, 0x6075, 0x242ee, 0x8218, 0x4e26, 0x51b5, 0x5168,
    0x4f80, 0x5145, 0x5180, 0x52c7, 0x52fa, 0x559d, 0x5555, 0x5599, 0x55e2, 0x585a,
    0x58b3, 0x5944, 0x5954, 0x5a62, 0x5b28, 0x5ed2, 0x5ed9, 0x5f69, 0x5fad, 0x60d8,
    0x614e, 0x6108, 0x618e, 0x6160, 0x61f2, 0x6234, 0x63c4, 0x641c, 0x6452, 0x6556,
    0x6674, 0x6717, 0x671b, 0x6756, 0x6b79, 0x6bba, 0x6d41, 0x6edb, 0x6ecb, 0x6f22,
    0x701e, 0x716e, 0x77a7, 0x7235, 0x72af, 0x732a, 0x7471, 0x7506, 0x753b, 0x761d,
    0x761f, 0x76ca, 0x76db, 0x76f4, 0x774a, 0x7740, 0x78cc, 0x7ab1, 0x7bc0, 0x7c7b,
    0x7d5b, 0x7df4, 0x7f3e, 0x8005, 0x8352, 0x83ef, 0x8779, 0x8941, 0x8986, 0x8996,
    0x8abf, 0x8af8, 0x8acb, 0x8b01, 0x8afe, 0x8aed, 0x8b39, 0x8b8a, 0x8d08, 0x8f38,
    0x9072, 0x9199, 0x9276, 0x967c, 0x96e3, 0x9756, 0x97db, 0x97ff, 0x980b, 0x983b,
    0x9b12, 0x9f9c, 0x2284a, 0x22844, 0x233d5, 0x3b9d, 0x4018, 0x4039, 0x25249, 0x25cd0,
    0x27ed3, 0x9f43, 0x9f8e, 0x5d9, 0x5b4, 0x5f2, 0x5b7, 0x5e9, 0x5c1, 0x5e9,
    0x5c2, 0x5e9, 0x5bc, 0x5c1, 0x5e9, 0x5bc, 0x5c2, 0x5d0, 0x5b7, 0x5d0,
    0x5b8, 0x5d0, 0x5bc, 0x5d1, 0x5bc, 0x5d2, 0x5bc, 0x5d3, 0x5bc, 0x5d4,
    0x5bc, 0x5d5, 0x5bc, 0x5d6, 0x5bc, 0x5d8, 0x5bc, 0x5d9, 0x5bc, 0x5da,
    0x5bc, 0x5db, 0x5bc, 0x5dc, 0x5bc, 0x5de, 0x5bc, 0x5e0, 0x5bc, 0x5e1,
    0x5bc, 0x5e3, 0x5bc, 0x5e4, 0x5bc, 0x5e6, 0x5bc, 0x5e7, 0x5bc, 0x5e8,
    0x5bc, 0x5e9, 0x5bc, 0x5ea, 0x5bc, 0x5d5, 0x5b9, 0x5d1, 0x5bf, 0x5db,
    0x5bf, 0x5e4, 0x5bf, 0x11099, 0x110ba, 0x1109b, 0x110ba, 0x110a5, 0x110ba, 0x11131,
    0x11127, 0x11132, 0x11127, 0x11347, 0x1133e, 0x11347, 0x11357, 0x114b9, 0x114ba, 0x114b9,
    0x114b0, 0x114b9, 0x114bd, 0x115b8, 0x115af, 0x115b9, 0x115af, 0x11935, 0x11930, 0x1d157,
    0x1d165, 0x1d158, 0x1d165, 0x1d158, 0x1d165, 0x1d16e, 0x1d158, 0x1d165, 0x1d16f, 0x1d158,
    0x1d165, 0x1d170, 0x1d158, 0x1d165, 0x1d171, 0x1d158, 0x1d165, 0x1d172, 0x1d1b9, 0x1d165,
    0x1d1ba, 0x1d165, 0x1d1b9, 0x1d165, 0x1d16e, 0x1d1ba, 0x1d165, 0x1d16e, 0x1d1b9, 0x1d165,
    0x1d16f, 0x1d1ba, 0x1d165, 0x1d16f, 0x4e3d, 0x4e38, 0x4e41, 0x20122, 0x4f60, 0x4fae,
    0x4fbb, 0x5002, 0x507a, 0x5099, 0x50e7, 0x50cf, 0x349e, 0x2063a, 0x514d, 0x5154,
    0x5164, 0x5177, 0x2051c, 0x34b9, 0x5167, 0x518d, 0x2054b, 0x5197, 0x51a4, 0x4ecc,
    0x51ac, 0x51b5, 0x291df, 0x51f5, 0x5203, 0x34df, 0x523b, 0x5246, 0x5272, 0x5277,
    0x3515, 0x52c7, 0x52c9, 0x52e4, 0x52fa, 0x5305, 0x5306, 0x5317, 0x5349, 0x5351,
    0x535a, 0x5373, 0x537d, 0x537f, 0x537f, 0x537f, 0x20a2c, 0x7070, 0x53ca, 0x53df,
    0x20b63, 0x53eb, 0x53f1, 0x5406, 0x549e, 0x5438, 0x5448, 0x5468, 0x54a2, 0x54f6,
    0x5510, 0x5553, 0x5563, 0x5584, 0x5584, 0x5599, 0x55ab, 0x55b3, 0x55c2, 0x5716,
    0x5606, 0x5717, 0x5651, 0x5674, 0x5207, 0x58ee, 0x57ce, 0x57f4, 0x580d, 0x578b,
    0x5832, 0x5831, 0x58ac, 0x214e4, 0x58f2, 0x58f7, 0x5906, 0x591a, 0x5922, 0x5962,
    0x216a8, 0x216ea, 0x59ec, 0x5a1b, 0x5a27, 0x59d8, 0x5a66, 0x36ee, 0x36fc, 0x5b08,
    0x5b3e, 0x5b3e, 0x219c8, 0x5bc3, 0x5bd8, 0x5be7, 0x5bf3, 0x21b18, 0x5bff, 0x5c06,
    0x5f53, 0x5c22, 0x3781, 0x5c60, 0x5c6e, 0x5cc0, 0x5c8d, 0x21de4, 0x5d43, 0x21de6,
    0x5d6e, 0x5d6b, 0x5d7c, 0x5de1, 0x5de2, 0x382f, 0x5dfd, 0x5e28, 0x5e3d, 0x5e69,
    0x3862, 0x22183, 0x387c, 0x5eb0, 0x5eb3, 0x5eb6, 0x5eca, 0x2a392, 0x5efe, 0x22331,
    0x22331, 0x8201, 0x5f22, 0x5f22, 0x38c7, 0x232b8, 0x261da, 0x5f62, 0x5f6b, 0x38e3,
    0x5f9a, 0x5fcd, 0x5fd7, 0x5ff9, 0x6081, 0x393a, 0x391c, 0x6094, 0x226d4, 0x60c7,
    0x6148, 0x614c, 0x614e, 0x614c, 0x617a, 0x618e, 0x61b2, 0x61a4, 0x61af, 0x61de,
    0x61f2, 0x61f6, 0x6210, 0x621b, 0x625d, 0x62b1, 0x62d4, 0x6350, 0x22b0c, 0x633d,
    0x62fc, 0x6368, 0x6383, 0x63e4, 0x22bf1, 0x6422, 0x63c5, 0x63a9, 0x3a2e, 0x6469,
    0x647e, 0x649d, 0x6477, 0x3a6c, 0x654f, 0x656c, 0x2300a, 0x65e3, 0x66f8, 0x6649,
    0x3b19, 0x6691, 0x3b08, 0x3ae4, 0x5192, 0x5195, 0x6700, 0x669c, 0x80ad, 0x43d9,
    0x6717, 0x671b, 0x6721, 0x675e, 0x6753, 0x233c3, 0x3b49, 0x67fa, 0x6785, 0x6852,
    0x6885, 0x2346d, 0x688e, 0x681f, 0x6914, 0x3b9d, 0x6942, 0x69a3, 0x69ea, 0x6aa8,
    0x236a3, 0x6adb, 0x3c18, 0x6b21, 0x238a7, 0x6b54, 0x3c4e, 0x6b72, 0x6b9f, 0x6bba,
    0x6bbb, 0x23a8d, 0x21d0b, 0x23afa, 0x6c4e, 0x23cbc, 0x6cbf, 0x6ccd, 0x6c67, 0x6d16,
    0x6d3e, 0x6d77, 0x6d41, 0x6d69, 0x6d78, 0x6d85, 0x23d1e, 0x6d34, 0x6e2f, 0x6e6e,
    0x3d33, 0x6ecb, 0x6ec7, 0x23ed1, 0x6df9, 0x6f6e, 0x23f5e, 0x23f8e, 0x6fc6, 0x7039,
    0x701e, 0x701b, 0x3d96, 0x704a, 0x707d, 0x7077, 0x70ad, 0x20525, 0x7145, 0x24263,
    0x719c, 0x243ab, 0x7228, 0x7235, 0x7250, 0x24608, 0x7280, 0x7295, 0x24735, 0x24814,
    0x737a, 0x738b, 0x3eac, 0x73a5, 0x3eb8, 0x3eb8, 0x7447, 0x745c, 0x7471, 0x7485,
    0x74ca, 0x3f1b, 0x7524, 0x24c36, 0x753e, 0x24c92, 0x7570, 0x2219f, 0x7610, 0x24fa1,
    0x24fb8, 0x25044, 0x3ffc, 0x4008, 0x76f4, 0x250f3, 0x250f2, 0x25119, 0x25133, 0x771e,
    0x771f, 0x771f, 0x774a, 0x4039, 0x778b, 0x4046, 0x4096, 0x2541d, 0x784e, 0x788c,
    0x78cc, 0x40e3, 0x25626, 0x7956, 0x2569a, 0x256c5, 0x798f, 0x79eb, 0x412f, 0x7a40,
    0x7a4a, 0x7a4f, 0x2597c, 0x25aa7, 0x25aa7, 0x7aee, 0x4202, 0x25bab, 0x7bc6, 0x7bc9,
    0x4227, 0x25c80, 0x7cd2, 0x42a0, 0x7ce8, 0x7ce3, 0x7d00, 0x25f86, 0x7d63, 0x4301,
    0x7dc7, 0x7e02, 0x7e45, 0x4334, 0x26228, 0x26247, 0x4359, 0x262d9, 0x7f7a, 0x2633e,
    0x7f95, 0x7ffa, 0x8005, 0x264da, 0x26523, 0x8060, 0x265a8, 0x8070, 0x2335f, 0x43d5,
    0x80b2, 0x8103, 0x440b, 0x813e, 0x5ab5, 0x267a7, 0x267b5, 0x23393, 0x2339c, 0x8201,
    0x8204, 0x8f9e, 0x446b, 0x8291, 0x828b, 0x829d, 0x52b3, 0x82b1, 0x82b3, 0x82bd,
    0x82e6, 0x26b3c, 0x82e5, 0x831d, 0x8363, 0x83ad, 0x8323, 0x83bd, 0x83e7, 0x8457,
    0x8353, 0x83ca, 0x83cc, 0x83dc, 0x26c36, 0x26d6b, 0x26cd5, 0x452b, 0x84f1, 0x84f3,
    0x8516, 0x273ca, 0x8564, 0x26f2c, 0x455d, 0x4561, 0x26fb1, 0x270d2, 0x456b, 0x8650,
    0x865c, 0x8667, 0x8669, 0x86a9, 0x8688, 0x870e, 0x86e2, 0x8779, 0x8728, 0x876b,
    0x8786, 0x45d7, 0x87e1, 0x8801, 0x45f9, 0x8860, 0x8863, 0x27667, 0x88d7, 0x88de,
    0x4635, 0x88fa, 0x34bb, 0x278ae, 0x27966, 0x46be, 0x46c7, 0x8aa0, 0x8aed, 0x8b8a,
    0x8c55, 0x27ca8, 0x8cab, 0x8cc1, 0x8d1b, 0x8d77, 0x27f2f, 0x20804, 0x8dcb, 0x8dbc,
    0x8df0, 0x208de, 0x8ed4, 0x8f38, 0x285d2, 0x285ed, 0x9094, 0x90f1, 0x9111, 0x2872e,
    0x911b, 0x9238, 0x92d7, 0x92d8, 0x927c, 0x93f9, 0x9415, 0x28bfa, 0x958b, 0x4995,
    0x95b7, 0x28d77, 0x49e6, 0x96c3, 0x5db2, 0x9723, 0x29145, 0x2921a, 0x4a6e, 0x4a76,
    0x97e0, 0x2940a, 0x4ab2, 0x29496, 0x980b, 0x980b, 0x9829, 0x295b6, 0x98e2, 0x4b33,
    0x9929, 0x99a7, 0x99c2, 0x99fe, 0x4bce, 0x29b30, 0x9b12, 0x9c40, 0x9cfd, 0x4cce,
    0x4ced, 0x9d67, 0x2a0ce, 0x4cf8, 0x2a105, 0x2a20e, 0x2a291, 0x9ebb, 0x4d56, 0x9ef9,
    0x9efe, 0x9f05, 0x9f0f, 0x9f16, 0x9f3b, 0x2a600,
};

const CompTriple kCompTriples[] = {
    {0x3c,0x338,0x226e}, {0x3d,0x338,0x2260}, {0x3e,0x338,0x226f}, {0x41,0x300,0xc0},
    {0x41,0x301,0xc1}, {0x41,0x302,0xc2}, {0x41,0x303,0xc3}, {0x41,0x304,0x100},
    {0x41,0x306,0x102}, {0x41,0x307,0x226}, {0x41,0x308,0xc4}, {0x41,0x309,0x1ea2},
    {0x41,0x30a,0xc5}, {0x41,0x30c,0x1cd}, {0x41,0x30f,0x200}, {0x41,0x311,0x202},
    {0x41,0x323,0x1ea0}, {0x41,0x325,0x1e00}, {0x41,0x328,0x104}, {0x42,0x307,0x1e02},
    {0x42,0x323,0x1e04}, {0x42,0x331,0x1e06}, {0x43,0x301,0x106}, {0x43,0x302,0x108},
    {0x43,0x307,0x10a}, {0x43,0x30c,0x10c}, {0x43,0x327,0xc7}, {0x44,0x307,0x1e0a},
    {0x44,0x30c,0x10e}, {0x44,0x323,0x1e0c}, {0x44,0x327,0x1e10}, {0x44,0x32d,0x1e12},
    {0x44,0x331,0x1e0e}, {0x45,0x300,0xc8}, {0x45,0x301,0xc9}, {0x45,0x302,0xca},
    {0x45,0x303,0x1ebc}, {0x45,0x304,0x112}, {0x45,0x306,0x114}, {0x45,0x307,0x116},
    {0x45,0x308,0xcb}, {0x45,0x309,0x1eba}, {0x45,0x30c,0x11a}, {0x45,0x30f,0x204},
    {0x45,0x311,0x206}, {0x45,0x323,0x1eb8}, {0x45,0x327,0x228}, {0x45,0x328,0x118},
    {0x45,0x32d,0x1e18}, {0x45,0x330,0x1e1a}, {0x46,0x307,0x1e1e}, {0x47,0x301,0x1f4},
    {0x47,0x302,0x11c}, {0x47,0x304,0x1e20}, {0x47,0x306,0x11e}, {0x47,0x307,0x120},
    {0x47,0x30c,0x1e6}, {0x47,0x327,0x122}, {0x48,0x302,0x124}, {0x48,0x307,0x1e22},
    {0x48,0x308,0x1e26}, {0x48,0x30c,0x21e}, {0x48,0x323,0x1e24}, {0x48,0x327,0x1e28},
    {0x48,0x32e,0x1e2a}, {0x49,0x300,0xcc}, {0x49,0x301,0xcd}, {0x49,0x302,0xce},
    {0x49,0x303,0x128}, {0x49,0x304,0x12a}, {0x49,0x306,0x12c}, {0x49,0x307,0x130},
    {0x49,0x308,0xcf}, {0x49,0x309,0x1ec8}, {0x49,0x30c,0x1cf}, {0x49,0x30f,0x208},
    {0x49,0x311,0x20a}, {0x49,0x323,0x1eca}, {0x49,0x328,0x12e}, {0x49,0x330,0x1e2c},
    {0x4a,0x302,0x134}, {0x4b,0x301,0x1e30}, {0x4b,0x30c,0x1e8}, {0x4b,0x323,0x1e32},
    {0x4b,0x327,0x136}, {0x4b,0x331,0x1e34}, {0x4c,0x301,0x139}, {0x4c,0x30c,0x13d},
    {0x4c,0x323,0x1e36}, {0x4c,0x327,0x13b}, {0x4c,0x32d,0x1e3c}, {0x4c,0x331,0x1e3a},
    {0x4d,0x301,0x1e3e}, {0x4d,0x307,0x1e40}, {0x4d,0x323,0x1e42}, {0x4e,0x300,0x1f8},
    {0x4e,0x301,0x143}, {0x4e,0x303,0xd1}, {0x4e,0x307,0x1e44}, {0x4e,0x30c,0x147},
    {0x4e,0x323,0x1e46}, {0x4e,0x327,0x145}, {0x4e,0x32d,0x1e4a}, {0x4e,0x331,0x1e48},
    {0x4f,0x300,0xd2}, {0x4f,0x301,0xd3}, {0x4f,0x302,0xd4}, {0x4f,0x303,0xd5},
    {0x4f,0x304,0x14c}, {0x4f,0x306,0x14e}, {0x4f,0x307,0x22e}, {0x4f,0x308,0xd6},
    {0x4f,0x309,0x1ece}, {0x4f,0x30b,0x150}, {0x4f,0x30c,0x1d1}, {0x4f,0x30f,0x20c},
    {0x4f,0x311,0x20e}, {0x4f,0x31b,0x1a0}, {0x4f,0x323,0x1ecc}, {0x4f,0x328,0x1ea},
    {0x50,0x301,0x1e54}, {0x50,0x307,0x1e56}, {0x52,0x301,0x154}, {0x52,0x307,0x1e58},
    {0x52,0x30c,0x158}, {0x52,0x30f,0x210}, {0x52,0x311,0x212}, {0x52,0x323,0x1e5a},
    {0x52,0x327,0x156}, {0x52,0x331,0x1e5e}, {0x53,0x301,0x15a}, {0x53,0x302,0x15c},
    {0x53,0x307,0x1e60}, {0x53,0x30c,0x160}, {0x53,0x323,0x1e62}, {0x53,0x326,0x218},
    {0x53,0x327,0x15e}, {0x54,0x307,0x1e6a}, {0x54,0x30c,0x164}, {0x54,0x323,0x1e6c},
    {0x54,0x326,0x21a}, {0x54,0x327,0x162}, {0x54,0x32d,0x1e70}, {0x54,0x331,0x1e6e},
    {0x55,0x300,0xd9}, {0x55,0x301,0xda}, {0x55,0x302,0xdb}, {0x55,0x303,0x168},
    {0x55,0x304,0x16a}, {0x55,0x306,0x16c}, {0x55,0x308,0xdc}, {0x55,0x309,0x1ee6},
    {0x55,0x30a,0x16e}, {0x55,0x30b,0x170}, {0x55,0x30c,0x1d3}, {0x55,0x30f,0x214},
    {0x55,0x311,0x216}, {0x55,0x31b,0x1af}, {0x55,0x323,0x1ee4}, {0x55,0x324,0x1e72},
    {0x55,0x328,0x172}, {0x55,0x32d,0x1e76}, {0x55,0x330,0x1e74}, {0x56,0x303,0x1e7c},
    {0x56,0x323,0x1e7e}, {0x57,0x300,0x1e80}, {0x57,0x301,0x1e82}, {0x57,0x302,0x174},
    {0x57,0x307,0x1e86}, {0x57,0x308,0x1e84}, {0x57,0x323,0x1e88}, {0x58,0x307,0x1e8a},
    {0x58,0x308,0x1e8c}, {0x59,0x300,0x1ef2}, {0x59,0x301,0xdd}, {0x59,0x302,0x176},
    {0x59,0x303,0x1ef8}, {0x59,0x304,0x232}, {0x59,0x307,0x1e8e}, {0x59,0x308,0x178},
    {0x59,0x309,0x1ef6}, {0x59,0x323,0x1ef4}, {0x5a,0x301,0x179}, {0x5a,0x302,0x1e90},
    {0x5a,0x307,0x17b}, {0x5a,0x30c,0x17d}, {0x5a,0x323,0x1e92}, {0x5a,0x331,0x1e94},
    {0x61,0x300,0xe0}, {0x61,0x301,0xe1}, {0x61,0x302,0xe2}, {0x61,0x303,0xe3},
    {0x61,0x304,0x101}, {0x61,0x306,0x103}, {0x61,0x307,0x227}, {0x61,0x308,0xe4},
    {0x61,0x309,0x1ea3}, {0x61,0x30a,0xe5}, {0x61,0x30c,0x1ce}, {0x61,0x30f,0x201},
    {0x61,0x311,0x203}, {0x61,0x323,0x1ea1}, {0x61,0x325,0x1e01}, {0x61,0x328,0x105},
    {0x62,0x307,0x1e03}, {0x62,0x323,0x1e05}, {0x62,0x331,0x1e07}, {0x63,0x301,0x107},
    {0x63,0x302,0x109}, {0x63,0x307,0x10b}, {0x63,0x30c,0x10d}, {0x63,0x327,0xe7},
    {0x64,0x307,0x1e0b}, {0x64,0x30c,0x10f}, {0x64,0x323,0x1e0d}, {0x64,0x327,0x1e11},
    {0x64,0x32d,0x1e13}, {0x64,0x331,0x1e0f}, {0x65,0x300,0xe8}, {0x65,0x301,0xe9},
    {0x65,0x302,0xea}, {0x65,0x303,0x1ebd}, {0x65,0x304,0x113}, {0x65,0x306,0x115},
    {0x65,0x307,0x117}, {0x65,0x308,0xeb}, {0x65,0x309,0x1ebb}, {0x65,0x30c,0x11b},
    {0x65,0x30f,0x205}, {0x65,0x311,0x207}, {0x65,0x323,0x1eb9}, {0x65,0x327,0x229},
    {0x65,0x328,0x119}, {0x65,0x32d,0x1e19}, {0x65,0x330,0x1e1b}, {0x66,0x307,0x1e1f},
    {0x67,0x301,0x1f5}, {0x67,0x302,0x11d}, {0x67,0x304,0x1e21}, {0x67,0x306,0x11f},
    {0x67,0x307,0x121}, {0x67,0x30c,0x1e7}, {0x67,0x327,0x123}, {0x68,0x302,0x125},
    {0x68,0x307,0x1e23}, {0x68,0x308,0x1e27}, {0x68,0x30c,0x21f}, {0x68,0x323,0x1e25},
    {0x68,0x327,0x1e29}, {0x68,0x32e,0x1e2b}, {0x68,0x331,0x1e96}, {0x69,0x300,0xec},
    {0x69,0x301,0xed}, {0x69,0x302,0xee}, {0x69,0x303,0x129}, {0x69,0x304,0x12b},
    {0x69,0x306,0x12d}, {0x69,0x308,0xef}, {0x69,0x309,0x1ec9}, {0x69,0x30c,0x1d0},
    {0x69,0x30f,0x209}, {0x69,0x311,0x20b}, {0x69,0x323,0x1ecb}, {0x69,0x328,0x12f},
    {0x69,0x330,0x1e2d}, {0x6a,0x302,0x135}, {0x6a,0x30c,0x1f0}, {0x6b,0x301,0x1e31},
    {0x6b,0x30c,0x1e9}, {0x6b,0x323,0x1e33}, {0x6b,0x327,0x137}, {0x6b,0x331,0x1e35},
    {0x6c,0x301,0x13a}, {0x6c,0x30c,0x13e}, {0x6c,0x323,0x1e37}, {0x6c,0x327,0x13c},
    {0x6c,0x32d,0x1e3d}, {0x6c,0x331,0x1e3b}, {0x6d,0x301,0x1e3f}, {0x6d,0x307,0x1e41},
    {0x6d,0x323,0x1e43}, {0x6e,0x300,0x1f9}, {0x6e,0x301,0x144}, {0x6e,0x303,0xf1},
    {0x6e,0x307,0x1e45}, {0x6e,0x30c,0x148}, {0x6e,0x323,0x1e47}, {0x6e,0x327,0x146},
    {0x6e,0x32d,0x1e4b}, {0x6e,0x331,0x1e49}, {0x6f,0x300,0xf2}, {0x6f,0x301,0xf3},
    {0x6f,0x302,0xf4}, {0x6f,0x303,0xf5}, {0x6f,0x304,0x14d}, {0x6f,0x306,0x14f},
    {0x6f,0x307,0x22f}, {0x6f,0x308,0xf6}, {0x6f,0x309,0x1ecf}, {0x6f,0x30b,0x151},
    {0x6f,0x30c,0x1d2}, {0x6f,0x30f,0x20d}, {0x6f,0x311,0x20f}, {0x6f,0x31b,0x1a1},
    {0x6f,0x323,0x1ecd}, {0x6f,0x328,0x1eb}, {0x70,0x301,0x1e55}, {0x70,0x307,0x1e57},
    {0x72,0x301,0x155}, {0x72,0x307,0x1e59}, {0x72,0x30c,0x159}, {0x72,0x30f,0x211},
    {0x72,0x311,0x213}, {0x72,0x323,0x1e5b}, {0x72,0x327,0x157}, {0x72,0x331,0x1e5f},
    {0x73,0x301,0x15b}, {0x73,0x302,0x15d}, {0x73,0x307,0x1e61}, {0x73,0x30c,0x161},
    {0x73,0x323,0x1e63}, {0x73,0x326,0x219}, {0x73,0x327,0x15f}, {0x74,0x307,0x1e6b},
    {0x74,0x308,0x1e97}, {0x74,0x30c,0x165}, {0x74,0x323,0x1e6d}, {0x74,0x326,0x21b},
    {0x74,0x327,0x163}, {0x74,0x32d,0x1e71}, {0x74,0x331,0x1e6f}, {0x75,0x300,0xf9},
    {0x75,0x301,0xfa}, {0x75,0x302,0xfb}, {0x75,0x303,0x169}, {0x75,0x304,0x16b},
    {0x75,0x306,0x16d}, {0x75,0x308,0xfc}, {0x75,0x309,0x1ee7}, {0x75,0x30a,0x16f},
    {0x75,0x30b,0x171}, {0x75,0x30c,0x1d4}, {0x75,0x30f,0x215}, {0x75,0x311,0x217},
    {0x75,0x31b,0x1b0}, {0x75,0x323,0x1ee5}, {0x75,0x324,0x1e73}, {0x75,0x328,0x173},
    {0x75,0x32d,0x1e77}, {0x75,0x330,0x1e75}, {0x76,0x303,0x1e7d}, {0x76,0x323,0x1e7f},
    {0x77,0x300,0x1e81}, {0x77,0x301,0x1e83}, {0x77,0x302,0x175}, {0x77,0x307,0x1e87},
    {0x77,0x308,0x1e85}, {0x77,0x30a,0x1e98}, {0x77,0x323,0x1e89}, {0x78,0x307,0x1e8b},
    {0x78,0x308,0x1e8d}, {0x79,0x300,0x1ef3}, {0x79,0x301,0xfd}, {0x79,0x302,0x177},
    {0x79,0x303,0x1ef9}, {0x79,0x304,0x233}, {0x79,0x307,0x1e8f}, {0x79,0x308,0xff},
    {0x79,0x309,0x1ef7}, {0x79,0x30a,0x1e99}, {0x79,0x323,0x1ef5}, {0x7a,0x301,0x17a},
    {0x7a,0x302,0x1e91}, {0x7a,0x307,0x17c}, {0x7a,0x30c,0x17e}, {0x7a,0x323,0x1e93},
    {0x7a,0x331,0x1e95}, {0xa8,0x300,0x1fed}, {0xa8,0x301,0x385}, {0xa8,0x342,0x1fc1},
    {0xc2,0x300,0x1ea6}, {0xc2,0x301,0x1ea4}, {0xc2,0x303,0x1eaa}, {0xc2,0x309,0x1ea8},
    {0xc4,0x304,0x1de}, {0xc5,0x301,0x1fa}, {0xc6,0x301,0x1fc}, {0xc6,0x304,0x1e2},
    {0xc7,0x301,0x1e08}, {0xca,0x300,0x1ec0}, {0xca,0x301,0x1ebe}, {0xca,0x303,0x1ec4},
    {0xca,0x309,0x1ec2}, {0xcf,0x301,0x1e2e}, {0xd4,0x300,0x1ed2}, {0xd4,0x301,0x1ed0},
    {0xd4,0x303,0x1ed6}, {0xd4,0x309,0x1ed4}, {0xd5,0x301,0x1e4c}, {0xd5,0x304,0x22c},
    {0xd5,0x308,0x1e4e}, {0xd6,0x304,0x22a}, {0xd8,0x301,0x1fe}, {0xdc,0x300,0x1db},
    {0xdc,0x301,0x1d7}, {0xdc,0x304,0x1d5}, {0xdc,0x30c,0x1d9}, {0xe2,0x300,0x1ea7},
    {0xe2,0x301,0x1ea5}, {0xe2,0x303,0x1eab}, {0xe2,0x309,0x1ea9}, {0xe4,0x304,0x1df},
    {0xe5,0x301,0x1fb}, {0xe6,0x301,0x1fd}, {0xe6,0x304,0x1e3}, {0xe7,0x301,0x1e09},
    {0xea,0x300,0x1ec1}, {0xea,0x301,0x1ebf}, {0xea,0x303,0x1ec5}, {0xea,0x309,0x1ec3},
    {0xef,0x301,0x1e2f}, {0xf4,0x300,0x1ed3}, {0xf4,0x301,0x1ed1}, {0xf4,0x303,0x1ed7},
    {0xf4,0x309,0x1ed5}, {0xf5,0x301,0x1e4d}, {0xf5,0x304,0x22d}, {0xf5,0x308,0x1e4f},
    {0xf6,0x304,0x22b}, {0xf8,0x301,0x1ff}, {0xfc,0x300,0x1dc}, {0xfc,0x301,0x1d8},
    {0xfc,0x304,0x1d6}, {0xfc,0x30c,0x1da}, {0x102,0x300,0x1eb0}, {0x102,0x301,0x1eae},
    {0x102,0x303,0x1eb4}, {0x102,0x309,0x1eb2}, {0x103,0x300,0x1eb1}, {0x103,0x301,0x1eaf},
    {0x103,0x303,0x1eb5}, {0x103,0x309,0x1eb3}, {0x112,0x300,0x1e14}, {0x112,0x301,0x1e16},
    {0x113,0x300,0x1e15}, {0x113,0x301,0x1e17}, {0x14c,0x300,0x1e50}, {0x14c,0x301,0x1e52},
    {0x14d,0x300,0x1e51}, {0x14d,0x301,0x1e53}, {0x15a,0x307,0x1e64}, {0x15b,0x307,0x1e65},
    {0x160,0x307,0x1e66}, {0x161,0x307,0x1e67}, {0x168,0x301,0x1e78}, {0x169,0x301,0x1e79},
    {0x16a,0x308,0x1e7a}, {0x16b,0x308,0x1e7b}, {0x17f,0x307,0x1e9b}, {0x1a0,0x300,0x1edc},
    {0x1a0,0x301,0x1eda}, {0x1a0,0x303,0x1ee0}, {0x1a0,0x309,0x1ede}, {0x1a0,0x323,0x1ee2},
    {0x1a1,0x300,0x1edd}, {0x1a1,0x301,0x1edb}, {0x1a1,0x303,0x1ee1}, {0x1a1,0x309,0x1edf},
    {0x1a1,0x323,0x1ee3}, {0x1af,0x300,0x1eea}, {0x1af,0x301,0x1ee8}, {0x1af,0x303,0x1eee},
    {0x1af,0x309,0x1eec}, {0x1af,0x323,0x1ef0}, {0x1b0,0x300,0x1eeb}, {0x1b0,0x301,0x1ee9},
    {0x1b0,0x303,0x1eef}, {0x1b0,0x309,0x1eed}, {0x1b0,0x323,0x1ef1}, {0x1b7,0x30c,0x1ee},
    {0x1ea,0x304,0x1ec}, {0x1eb,0x304,0x1ed}, {0x226,0x304,0x1e0}, {0x227,0x304,0x1e1},
    {0x228,0x306,0x1e1c}, {0x229,0x306,0x1e1d}, {0x22e,0x304,0x230}, {0x22f,0x304,0x231},
    {0x292,0x30c,0x1ef}, {0x391,0x300,0x1fba}, {0x391,0x301,0x386}, {0x391,0x304,0x1fb9},
    {0x391,0x306,0x1fb8}, {0x391,0x313,0x1f08}, {0x391,0x314,0x1f09}, {0x391,0x345,0x1fbc},
    {0x395,0x300,0x1fc8}, {0x395,0x301,0x388}, {0x395,0x313,0x1f18}, {0x395,0x314,0x1f19},
    {0x397,0x300,0x1fca}, {0x397,0x301,0x389}, {0x397,0x313,0x1f28}, {0x397,0x314,0x1f29},
    {0x397,0x345,0x1fcc}, {0x399,0x300,0x1fda}, {0x399,0x301,0x38a}, {0x399,0x304,0x1fd9},
    {0x399,0x306,0x1fd8}, {0x399,0x308,0x3aa}, {0x399,0x313,0x1f38}, {0x399,0x314,0x1f39},
    {0x39f,0x300,0x1ff8}, {0x39f,0x301,0x38c}, {0x39f,0x313,0x1f48}, {0x39f,0x314,0x1f49},
    {0x3a1,0x314,0x1fec}, {0x3a5,0x300,0x1fea}, {0x3a5,0x301,0x38e}, {0x3a5,0x304,0x1fe9},
    {0x3a5,0x306,0x1fe8}, {0x3a5,0x308,0x3ab}, {0x3a5,0x314,0x1f59}, {0x3a9,0x300,0x1ffa},
    {0x3a9,0x301,0x38f}, {0x3a9,0x313,0x1f68}, {0x3a9,0x314,0x1f69}, {0x3a9,0x345,0x1ffc},
    {0x3ac,0x345,0x1fb4}, {0x3ae,0x345,0x1fc4}, {0x3b1,0x300,0x1f70}, {0x3b1,0x301,0x3ac},
    {0x3b1,0x304,0x1fb1}, {0x3b1,0x306,0x1fb0}, {0x3b1,0x313,0x1f00}, {0x3b1,0x314,0x1f01},
    {0x3b1,0x342,0x1fb6}, {0x3b1,0x345,0x1fb3}, {0x3b5,0x300,0x1f72}, {0x3b5,0x301,0x3ad},
    {0x3b5,0x313,0x1f10}, {0x3b5,0x314,0x1f11}, {0x3b7,0x300,0x1f74}, {0x3b7,0x301,0x3ae},
    {0x3b7,0x313,0x1f20}, {0x3b7,0x314,0x1f21}, {0x3b7,0x342,0x1fc6}, {0x3b7,0x345,0x1fc3},
    {0x3b9,0x300,0x1f76}, {0x3b9,0x301,0x3af}, {0x3b9,0x304,0x1fd1}, {0x3b9,0x306,0x1fd0},
    {0x3b9,0x308,0x3ca}, {0x3b9,0x313,0x1f30}, {0x3b9,0x314,0x1f31}, {0x3b9,0x342,0x1fd6},
    {0x3bf,0x300,0x1f78}, {0x3bf,0x301,0x3cc}, {0x3bf,0x313,0x1f40}, {0x3bf,0x314,0x1f41},
    {0x3c1,0x313,0x1fe4}, {0x3c1,0x314,0x1fe5}, {0x3c5,0x300,0x1f7a}, {0x3c5,0x301,0x3cd},
    {0x3c5,0x304,0x1fe1}, {0x3c5,0x306,0x1fe0}, {0x3c5,0x308,0x3cb}, {0x3c5,0x313,0x1f50},
    {0x3c5,0x314,0x1f51}, {0x3c5,0x342,0x1fe6}, {0x3c9,0x300,0x1f7c}, {0x3c9,0x301,0x3ce},
    {0x3c9,0x313,0x1f60}, {0x3c9,0x314,0x1f61}, {0x3c9,0x342,0x1ff6}, {0x3c9,0x345,0x1ff3},
    {0x3ca,0x300,0x1fd2}, {0x3ca,0x301,0x390}, {0x3ca,0x342,0x1fd7}, {0x3cb,0x300,0x1fe2},
    {0x3cb,0x301,0x3b0}, {0x3cb,0x342,0x1fe7}, {0x3ce,0x345,0x1ff4}, {0x3d2,0x301,0x3d3},
    {0x3d2,0x308,0x3d4}, {0x406,0x308,0x407}, {0x410,0x306,0x4d0}, {0x410,0x308,0x4d2},
    {0x413,0x301,0x403}, {0x415,0x300,0x400}, {0x415,0x306,0x4d6}, {0x415,0x308,0x401},
    {0x416,0x306,0x4c1}, {0x416,0x308,0x4dc}, {0x417,0x308,0x4de}, {0x418,0x300,0x40d},
    {0x418,0x304,0x4e2}, {0x418,0x306,0x419}, {0x418,0x308,0x4e4}, {0x41a,0x301,0x40c},
    {0x41e,0x308,0x4e6}, {0x423,0x304,0x4ee}, {0x423,0x306,0x40e}, {0x423,0x308,0x4f0},
    {0x423,0x30b,0x4f2}, {0x427,0x308,0x4f4}, {0x42b,0x308,0x4f8}, {0x42d,0x308,0x4ec},
    {0x430,0x306,0x4d1}, {0x430,0x308,0x4d3}, {0x433,0x301,0x453}, {0x435,0x300,0x450},
    {0x435,0x306,0x4d7}, {0x435,0x308,0x451}, {0x436,0x306,0x4c2}, {0x436,0x308,0x4dd},
    {0x437,0x308,0x4df}, {0x438,0x300,0x45d}, {0x438,0x304,0x4e3}, {0x438,0x306,0x439},
    {0x438,0x308,0x4e5}, {0x43a,0x301,0x45c}, {0x43e,0x308,0x4e7}, {0x443,0x304,0x4ef},
    {0x443,0x306,0x45e}, {0x443,0x308,0x4f1}, {0x443,0x30b,0x4f3}, {0x447,0x308,0x4f5},
    {0x44b,0x308,0x4f9}, {0x44d,0x308,0x4ed}, {0x456,0x308,0x457}, {0x474,0x30f,0x476},
    {0x475,0x30f,0x477}, {0x4d8,0x308,0x4da}, {0x4d9,0x308,0x4db}, {0x4e8,0x308,0x4ea},
    {0x4e9,0x308,0x4eb}, {0x627,0x653,0x622}, {0x627,0x654,0x623}, {0x627,0x655,0x625},
    {0x648,0x654,0x624}, {0x64a,0x654,0x626}, {0x6c1,0x654,0x6c2}, {0x6d2,0x654,0x6d3},
    {0x6d5,0x654,0x6c0}, {0x928,0x93c,0x929}, {0x930,0x93c,0x931}, {0x933,0x93c,0x934},
    {0x9c7,0x9be,0x9cb}, {0x9c7,0x9d7,0x9cc}, {0xb47,0xb3e,0xb4b}, {0xb47,0xb56,0xb48},
    {0xb47,0xb57,0xb4c}, {0xb92,0xbd7,0xb94}, {0xbc6,0xbbe,0xbca}, {0xbc6,0xbd7,0xbcc},
    {0xbc7,0xbbe,0xbcb}, {0xc46,0xc56,0xc48}, {0xcbf,0xcd5,0xcc0}, {0xcc6,0xcc2,0xcca},
    {0xcc6,0xcd5,0xcc7}, {0xcc6,0xcd6,0xcc8}, {0xcca,0xcd5,0xccb}, {0xd46,0xd3e,0xd4a},
    {0xd46,0xd57,0xd4c}, {0xd47,0xd3e,0xd4b}, {0xdd9,0xdca,0xdda}, {0xdd9,0xdcf,0xddc},
    {0xdd9,0xddf,0xdde}, {0xddc,0xdca,0xddd}, {0x1025,0x102e,0x1026}, {0x1b05,0x1b35,0x1b06},
    {0x1b07,0x1b35,0x1b08}, {0x1b09,0x1b35,0x1b0a}, {0x1b0b,0x1b35,0x1b0c}, {0x1b0d,0x1b35,0x1b0e},
    {0x1b11,0x1b35,0x1b12}, {0x1b3a,0x1b35,0x1b3b}, {0x1b3c,0x1b35,0x1b3d}, {0x1b3e,0x1b35,0x1b40},
    {0x1b3f,0x1b35,0x1b41}, {0x1b42,0x1b35,0x1b43}, {0x1e36,0x304,0x1e38}, {0x1e37,0x304,0x1e39},
    {0x1e5a,0x304,0x1e5c}, {0x1e5b,0x304,0x1e5d}, {0x1e62,0x307,0x1e68}, {0x1e63,0x307,0x1e69},
    {0x1ea0,0x302,0x1eac}, {0x1ea0,0x306,0x1eb6}, {0x1ea1,0x302,0x1ead}, {0x1ea1,0x306,0x1eb7},
    {0x1eb8,0x302,0x1ec6}, {0x1eb9,0x302,0x1ec7}, {0x1ecc,0x302,0x1ed8}, {0x1ecd,0x302,0x1ed9},
    {0x1f00,0x300,0x1f02}, {0x1f00,0x301,0x1f04}, {0x1f00,0x342,0x1f06}, {0x1f00,0x345,0x1f80},
    {0x1f01,0x300,0x1f03}, {0x1f01,0x301,0x1f05}, {0x1f01,0x342,0x1f07}, {0x1f01,0x345,0x1f81},
    {0x1f02,0x345,0x1f82}, {0x1f03,0x345,0x1f83}, {0x1f04,0x345,0x1f84}, {0x1f05,0x345,0x1f85},
    {0x1f06,0x345,0x1f86}, {0x1f07,0x345,0x1f87}, {0x1f08,0x300,0x1f0a}, {0x1f08,0x301,0x1f0c},
    {0x1f08,0x342,0x1f0e}, {0x1f08,0x345,0x1f88}, {0x1f09,0x300,0x1f0b}, {0x1f09,0x301,0x1f0d},
    {0x1f09,0x342,0x1f0f}, {0x1f09,0x345,0x1f89}, {0x1f0a,0x345,0x1f8a}, {0x1f0b,0x345,0x1f8b},
    {0x1f0c,0x345,0x1f8c}, {0x1f0d,0x345,0x1f8d}, {0x1f0e,0x345,0x1f8e}, {0x1f0f,0x345,0x1f8f},
    {0x1f10,0x300,0x1f12}, {0x1f10,0x301,0x1f14}, {0x1f11,0x300,0x1f13}, {0x1f11,0x301,0x1f15},
    {0x1f18,0x300,0x1f1a}, {0x1f18,0x301,0x1f1c}, {0x1f19,0x300,0x1f1b}, {0x1f19,0x301,0x1f1d},
    {0x1f20,0x300,0x1f22}, {0x1f20,0x301,0x1f24}, {0x1f20,0x342,0x1f26}, {0x1f20,0x345,0x1f90},
    {0x1f21,0x300,0x1f23}, {0x1f21,0x301,0x1f25}, {0x1f21,0x342,0x1f27}, {0x1f21,0x345,0x1f91},
    {0x1f22,0x345,0x1f92}, {0x1f23,0x345,0x1f93}, {0x1f24,0x345,0x1f94}, {0x1f25,0x345,0x1f95},
    {0x1f26,0x345,0x1f96}, {0x1f27,0x345,0x1f97}, {0x1f28,0x300,0x1f2a}, {0x1f28,0x301,0x1f2c},
    {0x1f28,0x342,0x1f2e}, {0x1f28,0x345,0x1f98}, {0x1f29,0x300,0x1f2b}, {0x1f29,0x301,0x1f2d},
    {0x1f29,0x342,0x1f2f}, {0x1f29,0x345,0x1f99}, {0x1f2a,0x345,0x1f9a}, {0x1f2b,0x345,0x1f9b},
    {0x1f2c,0x345,0x1f9c}, {0x1f2d,0x345,0x1f9d}, {0x1f2e,0x345,0x1f9e}, {0x1f2f,0x345,0x1f9f},
    {0x1f30,0x300,0x1f32}, {0x1f30,0x301,0x1f34}, {0x1f30,0x342,0x1f36}, {0x1f31,0x300,0x1f33},
    {0x1f31,0x301,0x1f35}, {0x1f31,0x342,0x1f37}, {0x1f38,0x300,0x1f3a}, {0x1f38,0x301,0x1f3c},
    {0x1f38,0x342,0x1f3e}, {0x1f39,0x300,0x1f3b}, {0x1f39,0x301,0x1f3d}, {0x1f39,0x342,0x1f3f},
    {0x1f40,0x300,0x1f42}, {0x1f40,0x301,0x1f44}, {0x1f41,0x300,0x1f43}, {0x1f41,0x301,0x1f45},
    {0x1f48,0x300,0x1f4a}, {0x1f48,0x301,0x1f4c}, {0x1f49,0x300,0x1f4b}, {0x1f49,0x301,0x1f4d},
    {0x1f50,0x300,0x1f52}, {0x1f50,0x301,0x1f54}, {0x1f50,0x342,0x1f56}, {0x1f51,0x300,0x1f53},
    {0x1f51,0x301,0x1f55}, {0x1f51,0x342,0x1f57}, {0x1f59,0x300,0x1f5b}, {0x1f59,0x301,0x1f5d},
    {0x1f59,0x342,0x1f5f}, {0x1f60,0x300,0x1f62}, {0x1f60,0x301,0x1f64}, {0x1f60,0x342,0x1f66},
    {0x1f60,0x345,0x1fa0}, {0x1f61,0x300,0x1f63}, {0x1f61,0x301,0x1f65}, {0x1f61,0x342,0x1f67},
    {0x1f61,0x345,0x1fa1}, {0x1f62,0x345,0x1fa2}, {0x1f63,0x345,0x1fa3}, {0x1f64,0x345,0x1fa4},
    {0x1f65,0x345,0x1fa5}, {0x1f66,0x345,0x1fa6}, {0x1f67,0x345,0x1fa7}, {0x1f68,0x300,0x1f6a},
    {0x1f68,0x301,0x1f6c}, {0x1f68,0x342,0x1f6e}, {0x1f68,0x345,0x1fa8}, {0x1f69,0x300,0x1f6b},
    {0x1f69,0x301,0x1f6d}, {0x1f69,0x342,0x1f6f}, {0x1f69,0x345,0x1fa9}, {0x1f6a,0x345,0x1faa},
    {0x1f6b,0x345,0x1fab}, {0x1f6c,0x345,0x1fac}, {0x1f6d,0x345,0x1fad}, {0x1f6e,0x345,0x1fae},
    {0x1f6f,0x345,0x1faf}, {0x1f70,0x345,0x1fb2}, {0x1f74,0x345,0x1fc2}, {0x1f7c,0x345,0x1ff2},
    {0x1fb6,0x345,0x1fb7}, {0x1fbf,0x300,0x1fcd}, {0x1fbf,0x301,0x1fce}, {0x1fbf,0x342,0x1fcf},
    {0x1fc6,0x345,0x1fc7}, {0x1ff6,0x345,0x1ff7}, {0x1ffe,0x300,0x1fdd}, {0x1ffe,0x301,0x1fde},
    {0x1ffe,0x342,0x1fdf}, {0x2190,0x338,0x219a}, {0x2192,0x338,0x219b}, {0x2194,0x338,0x21ae},
    {0x21d0,0x338,0x21cd}, {0x21d2,0x338,0x21cf}, {0x21d4,0x338,0x21ce}, {0x2203,0x338,0x2204},
    {0x2208,0x338,0x2209}, {0x220b,0x338,0x220c}, {0x2223,0x338,0x2224}, {0x2225,0x338,0x2226},
    {0x223c,0x338,0x2241}, {0x2243,0x338,0x2244}, {0x2245,0x338,0x2247}, {0x2248,0x338,0x2249},
    {0x224d,0x338,0x226d}, {0x2261,0x338,0x2262}, {0x2264,0x338,0x2270}, {0x2265,0x338,0x2271},
    {0x2272,0x338,0x2274}, {0x2273,0x338,0x2275}, {0x2276,0x338,0x2278}, {0x2277,0x338,0x2279},
    {0x227a,0x338,0x2280}, {0x227b,0x338,0x2281}, {0x227c,0x338,0x22e0}, {0x227d,0x338,0x22e1},
    {0x2282,0x338,0x2284}, {0x2283,0x338,0x2285}, {0x2286,0x338,0x2288}, {0x2287,0x338,0x2289},
    {0x2291,0x338,0x22e2}, {0x2292,0x338,0x22e3}, {0x22a2,0x338,0x22ac}, {0x22a8,0x338,0x22ad},
    {0x22a9,0x338,0x22ae}, {0x22ab,0x338,0x22af}, {0x22b2,0x338,0x22ea}, {0x22b3,0x338,0x22eb},
    {0x22b4,0x338,0x22ec}, {0x22b5,0x338,0x22ed}, {0x3046,0x3099,0x3094}, {0x304b,0x3099,0x304c},
    {0x304d,0x3099,0x304e}, {0x304f,0x3099,0x3050}, {0x3051,0x3099,0x3052}, {0x3053,0x3099,0x3054},
    {0x3055,0x3099,0x3056}, {0x3057,0x3099,0x3058}, {0x3059,0x3099,0x305a}, {0x305b,0x3099,0x305c},
    {0x305d,0x3099,0x305e}, {0x305f,0x3099,0x3060}, {0x3061,0x3099,0x3062}, {0x3064,0x3099,0x3065},
    {0x3066,0x3099,0x3067}, {0x3068,0x3099,0x3069}, {0x306f,0x3099,0x3070}, {0x306f,0x309a,0x3071},
    {0x3072,0x3099,0x3073}, {0x3072,0x309a,0x3074}, {0x3075,0x3099,0x3076}, {0x3075,0x309a,0x3077},
    {0x3078,0x3099,0x3079}, {0x3078,0x309a,0x307a}, {0x307b,0x3099,0x307c}, {0x307b,0x309a,0x307d},
    {0x309d,0x3099,0x309e}, {0x30a6,0x3099,0x30f4}, {0x30ab,0x3099,0x30ac}, {0x30ad,0x3099,0x30ae},
    {0x30af,0x3099,0x30b0}, {0x30b1,0x3099,0x30b2}, {0x30b3,0x3099,0x30b4}, {0x30b5,0x3099,0x30b6},
    {0x30b7,0x3099,0x30b8}, {0x30b9,0x3099,0x30ba}, {0x30bb,0x3099,0x30bc}, {0x30bd,0x3099,0x30be},
    {0x30bf,0x3099,0x30c0}, {0x30c1,0x3099,0x30c2}, {0x30c4,0x3099,0x30c5}, {0x30c6,0x3099,0x30c7},
    {0x30c8,0x3099,0x30c9}, {0x30cf,0x3099,0x30d0}, {0x30cf,0x309a,0x30d1}, {0x30d2,0x3099,0x30d3},
    {0x30d2,0x309a,0x30d4}, {0x30d5,0x3099,0x30d6}, {0x30d5,0x309a,0x30d7}, {0x30d8,0x3099,0x30d9},
    {0x30d8,0x309a,0x30da}, {0x30db,0x3099,0x30dc}, {0x30db,0x309a,0x30dd}, {0x30ef,0x3099,0x30f7},
    {0x30f0,0x3099,0x30f8}, {0x30f1,0x3099,0x30f9}, {0x30f2,0x3099,0x30fa}, {0x30fd,0x3099,0x30fe},
    {0x11099,0x110ba,0x1109a}, {0x1109b,0x110ba,0x1109c}, {0x110a5,0x110ba,0x110ab}, {0x11131,0x11127,0x1112e},
    {0x11132,0x11127,0x1112f}, {0x11347,0x1133e,0x1134b}, {0x11347,0x11357,0x1134c}, {0x114b9,0x114b0,0x114bc},
    {0x114b9,0x114ba,0x114bb}, {0x114b9,0x114bd,0x114be}, {0x115b8,0x115af,0x115ba}, {0x115b9,0x115af,0x115bb},
    {0x11935,0x11930,0x11938},
};
const std::size_t kCompTripleCount = 941;

}  // namespace claimpipe::uni
