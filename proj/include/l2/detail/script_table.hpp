// Generated by scripts/gen_unicode_tables.py -- do not edit by hand.
#pragma once

#include <cstddef>
#include <cstdint>

namespace l2::detail {

// Inclusive codepoint ranges mapping to script classes; sorted by lo.
// Class ids match l2::Script enumerator order.
struct ScriptRange {
  char32_t lo;
  char32_t hi;
  std::uint8_t cls;
};

inline constexpr ScriptRange kScriptRanges[] = {
    {0x9, 0xD, 9},
    {0x20, 0x2F, 9},
    {0x30, 0x39, 8},
    {0x3A, 0x40, 9},
    {0x41, 0x5A, 1},
    {0x5B, 0x60, 9},
    {0x61, 0x7A, 1},
    {0x7B, 0x7E, 9},
    {0x85, 0x85, 9},
    {0xA0, 0xA9, 9},
    {0xAA, 0xAA, 1},
    {0xAB, 0xAC, 9},
    {0xAE, 0xB1, 9},
    {0xB4, 0xB4, 9},
    {0xB6, 0xB8, 9},
    {0xBA, 0xBA, 1},
    {0xBB, 0xBB, 9},
    {0xBF, 0xBF, 9},
    {0xC0, 0xD6, 1},
    {0xD7, 0xD7, 9},
    {0xD8, 0xF6, 1},
    {0xF7, 0xF7, 9},
    {0xF8, 0x2B8, 1},
    {0x2C2, 0x2C5, 9},
    {0x2D2, 0x2DF, 9},
    {0x2E0, 0x2E4, 1},
    {0x2E5, 0x2EB, 9},
    {0x2ED, 0x2ED, 9},
    {0x2EF, 0x2FF, 9},
    {0x375, 0x375, 9},
    {0x37E, 0x37E, 9},
    {0x384, 0x385, 9},
    {0x387, 0x387, 9},
    {0x3F6, 0x3F6, 9},
    {0x400, 0x484, 2},
    {0x487, 0x52F, 2},
    {0x55A, 0x55F, 9},
    {0x589, 0x58A, 9},
    {0x58D, 0x58F, 9},
    {0x591, 0x5C7, 4},
    {0x5D0, 0x5EA, 4},
    {0x5EF, 0x5F4, 4},
    {0x600, 0x604, 3},
    {0x606, 0x60B, 3},
    {0x60C, 0x60C, 9},
    {0x60D, 0x61A, 3},
    {0x61B, 0x61B, 9},
    {0x61C, 0x61E, 3},
    {0x61F, 0x61F, 9},
    {0x620, 0x63F, 3},
    {0x641, 0x64A, 3},
    {0x656, 0x66F, 3},
    {0x671, 0x6DC, 3},
    {0x6DE, 0x6FF, 3},
    {0x700, 0x70D, 9},
    {0x750, 0x77F, 3},
    {0x7C0, 0x7C9, 8},
    {0x7F6, 0x7F9, 9},
    {0x7FE, 0x7FF, 9},
    {0x830, 0x83E, 9},
    {0x85E, 0x85E, 9},
    {0x870, 0x891, 3},
    {0x897, 0x8E1, 3},
    {0x8E3, 0x8FF, 3},
    {0x964, 0x965, 9},
    {0x966, 0x96F, 8},
    {0x970, 0x970, 9},
    {0x9E6, 0x9EF, 8},
    {0x9F2, 0x9F3, 9},
    {0x9FA, 0x9FB, 9},
    {0x9FD, 0x9FD, 9},
    {0xA66, 0xA6F, 8},
    {0xA76, 0xA76, 9},
    {0xAE6, 0xAEF, 8},
    {0xAF0, 0xAF1, 9},
    {0xB66, 0xB6F, 8},
    {0xB70, 0xB70, 9},
    {0xBE6, 0xBEF, 8},
    {0xBF3, 0xBFA, 9},
    {0xC66, 0xC6F, 8},
    {0xC77, 0xC77, 9},
    {0xC7F, 0xC7F, 9},
    {0xC84, 0xC84, 9},
    {0xCE6, 0xCEF, 8},
    {0xD4F, 0xD4F, 9},
    {0xD66, 0xD6F, 8},
    {0xD79, 0xD79, 9},
    {0xDE6, 0xDEF, 8},
    {0xDF4, 0xDF4, 9},
    {0xE3F, 0xE3F, 9},
    {0xE4F, 0xE4F, 9},
    {0xE50, 0xE59, 8},
    {0xE5A, 0xE5B, 9},
    {0xED0, 0xED9, 8},
    {0xF01, 0xF17, 9},
    {0xF1A, 0xF1F, 9},
    {0xF20, 0xF29, 8},
    {0xF34, 0xF34, 9},
    {0xF36, 0xF36, 9},
    {0xF38, 0xF38, 9},
    {0xF3A, 0xF3D, 9},
    {0xF85, 0xF85, 9},
    {0xFBE, 0xFC5, 9},
    {0xFC7, 0xFCC, 9},
    {0xFCE, 0xFDA, 9},
    {0x1040, 0x1049, 8},
    {0x104A, 0x104F, 9},
    {0x1090, 0x1099, 8},
    {0x109E, 0x109F, 9},
    {0x10FB, 0x10FB, 9},
    {0x1100, 0x11FF, 7},
    {0x1360, 0x1368, 9},
    {0x1390, 0x1399, 9},
    {0x1400, 0x1400, 9},
    {0x166D, 0x166E, 9},
    {0x1680, 0x1680, 9},
    {0x169B, 0x169C, 9},
    {0x16EB, 0x16ED, 9},
    {0x1735, 0x1736, 9},
    {0x17D4, 0x17D6, 9},
    {0x17D8, 0x17DB, 9},
    {0x17E0, 0x17E9, 8},
    {0x1800, 0x180A, 9},
    {0x1810, 0x1819, 8},
    {0x1940, 0x1940, 9},
    {0x1944, 0x1945, 9},
    {0x1946, 0x194F, 8},
    {0x19D0, 0x19D9, 8},
    {0x19DE, 0x19FF, 9},
    {0x1A1E, 0x1A1F, 9},
    {0x1A80, 0x1A89, 8},
    {0x1A90, 0x1A99, 8},
    {0x1AA0, 0x1AA6, 9},
    {0x1AA8, 0x1AAD, 9},
    {0x1B4E, 0x1B4F, 9},
    {0x1B50, 0x1B59, 8},
    {0x1B5A, 0x1B6A, 9},
    {0x1B74, 0x1B7F, 9},
    {0x1BB0, 0x1BB9, 8},
    {0x1BFC, 0x1BFF, 9},
    {0x1C3B, 0x1C3F, 9},
    {0x1C40, 0x1C49, 8},
    {0x1C50, 0x1C59, 8},
    {0x1C7E, 0x1C7F, 9},
    {0x1C80, 0x1C8A, 2},
    {0x1CC0, 0x1CC7, 9},
    {0x1CD3, 0x1CD3, 9},
    {0x1D00, 0x1D25, 1},
    {0x1D2B, 0x1D2B, 2},
    {0x1D2C, 0x1D5C, 1},
    {0x1D62, 0x1D65, 1},
    {0x1D6B, 0x1D77, 1},
    {0x1D78, 0x1D78, 2},
    {0x1D79, 0x1DBE, 1},
    {0x1E00, 0x1EFF, 1},
    {0x1FBD, 0x1FBD, 9},
    {0x1FBF, 0x1FC1, 9},
    {0x1FCD, 0x1FCF, 9},
    {0x1FDD, 0x1FDF, 9},
    {0x1FED, 0x1FEF, 9},
    {0x1FFD, 0x1FFE, 9},
    {0x2000, 0x200A, 9},
    {0x2010, 0x2029, 9},
    {0x202F, 0x205F, 9},
    {0x2071, 0x2071, 1},
    {0x207A, 0x207E, 9},
    {0x207F, 0x207F, 1},
    {0x208A, 0x208E, 9},
    {0x2090, 0x209C, 1},
    {0x20A0, 0x20C1, 9},
    {0x2100, 0x2101, 9},
    {0x2103, 0x2106, 9},
    {0x2108, 0x2109, 9},
    {0x2114, 0x2114, 9},
    {0x2116, 0x2118, 9},
    {0x211E, 0x2123, 9},
    {0x2125, 0x2125, 9},
    {0x2127, 0x2127, 9},
    {0x2129, 0x2129, 9},
    {0x212A, 0x212B, 1},
    {0x212E, 0x212E, 9},
    {0x2132, 0x2132, 1},
    {0x213A, 0x213B, 9},
    {0x2140, 0x2144, 9},
    {0x214A, 0x214D, 9},
    {0x214E, 0x214E, 1},
    {0x214F, 0x214F, 9},
    {0x2160, 0x2188, 1},
    {0x218A, 0x218B, 9},
    {0x2190, 0x2429, 9},
    {0x2440, 0x244A, 9},
    {0x249C, 0x24E9, 9},
    {0x2500, 0x2775, 9},
    {0x2794, 0x2B73, 9},
    {0x2B76, 0x2BFF, 9},
    {0x2C60, 0x2C7F, 1},
    {0x2CE5, 0x2CEA, 9},
    {0x2CF9, 0x2CFC, 9},
    {0x2CFE, 0x2CFF, 9},
    {0x2D70, 0x2D70, 9},
    {0x2DE0, 0x2DFF, 2},
    {0x2E00, 0x2E2E, 9},
    {0x2E30, 0x2E5D, 9},
    {0x2E80, 0x2E99, 0},
    {0x2E9B, 0x2EF3, 0},
    {0x2F00, 0x2FD5, 0},
    {0x2FF0, 0x3004, 9},
    {0x3005, 0x3005, 0},
    {0x3007, 0x3007, 0},
    {0x3008, 0x3020, 9},
    {0x3021, 0x3029, 0},
    {0x302E, 0x302F, 7},
    {0x3030, 0x3030, 9},
    {0x3036, 0x3037, 9},
    {0x3038, 0x303B, 0},
    {0x303D, 0x303F, 9},
    {0x3041, 0x3096, 5},
    {0x309B, 0x309C, 9},
    {0x309D, 0x309F, 5},
    {0x30A0, 0x30A0, 9},
    {0x30A1, 0x30FA, 6},
    {0x30FB, 0x30FB, 9},
    {0x30FD, 0x30FF, 6},
    {0x3131, 0x318E, 7},
    {0x3190, 0x3191, 9},
    {0x3196, 0x319F, 9},
    {0x31C0, 0x31E5, 9},
    {0x31EF, 0x31EF, 9},
    {0x31F0, 0x31FF, 6},
    {0x3200, 0x321E, 7},
    {0x322A, 0x3247, 9},
    {0x3250, 0x3250, 9},
    {0x3260, 0x327E, 7},
    {0x327F, 0x327F, 9},
    {0x328A, 0x32B0, 9},
    {0x32C0, 0x32CF, 9},
    {0x32D0, 0x32FE, 6},
    {0x32FF, 0x32FF, 9},
    {0x3300, 0x3357, 6},
    {0x3358, 0x33FF, 9},
    {0x3400, 0x4DBF, 0},
    {0x4DC0, 0x4DFF, 9},
    {0x4E00, 0x9FFF, 0},
    {0xA490, 0xA4C6, 9},
    {0xA4FE, 0xA4FF, 9},
    {0xA60D, 0xA60F, 9},
    {0xA620, 0xA629, 8},
    {0xA640, 0xA69F, 2},
    {0xA6F2, 0xA6F7, 9},
    {0xA700, 0xA716, 9},
    {0xA720, 0xA721, 9},
    {0xA722, 0xA787, 1},
    {0xA789, 0xA78A, 9},
    {0xA78B, 0xA7DC, 1},
    {0xA7F1, 0xA7FF, 1},
    {0xA828, 0xA82B, 9},
    {0xA836, 0xA839, 9},
    {0xA874, 0xA877, 9},
    {0xA8CE, 0xA8CF, 9},
    {0xA8D0, 0xA8D9, 8},
    {0xA8F8, 0xA8FA, 9},
    {0xA8FC, 0xA8FC, 9},
    {0xA900, 0xA909, 8},
    {0xA92E, 0xA92F, 9},
    {0xA95F, 0xA95F, 9},
    {0xA960, 0xA97C, 7},
    {0xA9C1, 0xA9CD, 9},
    {0xA9D0, 0xA9D9, 8},
    {0xA9DE, 0xA9DF, 9},
    {0xA9F0, 0xA9F9, 8},
    {0xAA50, 0xAA59, 8},
    {0xAA5C, 0xAA5F, 9},
    {0xAA77, 0xAA79, 9},
    {0xAADE, 0xAADF, 9},
    {0xAAF0, 0xAAF1, 9},
    {0xAB30, 0xAB5A, 1},
    {0xAB5B, 0xAB5B, 9},
    {0xAB5C, 0xAB64, 1},
    {0xAB66, 0xAB69, 1},
    {0xAB6A, 0xAB6B, 9},
    {0xABEB, 0xABEB, 9},
    {0xABF0, 0xABF9, 8},
    {0xAC00, 0xD7A3, 7},
    {0xD7B0, 0xD7C6, 7},
    {0xD7CB, 0xD7FB, 7},
    {0xF900, 0xFA6D, 0},
    {0xFA70, 0xFAD9, 0},
    {0xFB00, 0xFB06, 1},
    {0xFB1D, 0xFB36, 4},
    {0xFB38, 0xFB3C, 4},
    {0xFB3E, 0xFB3E, 4},
    {0xFB40, 0xFB41, 4},
    {0xFB43, 0xFB44, 4},
    {0xFB46, 0xFB4F, 4},
    {0xFB50, 0xFD3D, 3},
    {0xFD3E, 0xFD3F, 9},
    {0xFD40, 0xFDCF, 3},
    {0xFDF0, 0xFDFF, 3},
    {0xFE10, 0xFE19, 9},
    {0xFE2E, 0xFE2F, 2},
    {0xFE30, 0xFE52, 9},
    {0xFE54, 0xFE66, 9},
    {0xFE68, 0xFE6B, 9},
    {0xFE70, 0xFE74, 3},
    {0xFE76, 0xFEFC, 3},
    {0xFF01, 0xFF0F, 9},
    {0xFF10, 0xFF19, 8},
    {0xFF1A, 0xFF20, 9},
    {0xFF21, 0xFF3A, 1},
    {0xFF3B, 0xFF40, 9},
    {0xFF41, 0xFF5A, 1},
    {0xFF5B, 0xFF65, 9},
    {0xFF66, 0xFF6F, 6},
    {0xFF71, 0xFF9D, 6},
    {0xFFA0, 0xFFBE, 7},
    {0xFFC2, 0xFFC7, 7},
    {0xFFCA, 0xFFCF, 7},
    {0xFFD2, 0xFFD7, 7},
    {0xFFDA, 0xFFDC, 7},
    {0xFFE0, 0xFFE6, 9},
    {0xFFE8, 0xFFEE, 9},
    {0xFFFC, 0xFFFD, 9},
    {0x10100, 0x10102, 9},
    {0x10137, 0x1013F, 9},
    {0x10179, 0x10189, 9},
    {0x1018C, 0x1018E, 9},
    {0x10190, 0x1019C, 9},
    {0x101A0, 0x101A0, 9},
    {0x101D0, 0x101FC, 9},
    {0x1039F, 0x1039F, 9},
    {0x103D0, 0x103D0, 9},
    {0x104A0, 0x104A9, 8},
    {0x1056F, 0x1056F, 9},
    {0x10780, 0x10785, 1},
    {0x10787, 0x107B0, 1},
    {0x107B2, 0x107BA, 1},
    {0x10857, 0x10857, 9},
    {0x10877, 0x10878, 9},
    {0x1091F, 0x1091F, 9},
    {0x1093F, 0x1093F, 9},
    {0x10A50, 0x10A58, 9},
    {0x10A7F, 0x10A7F, 9},
    {0x10AC8, 0x10AC8, 9},
    {0x10AF0, 0x10AF6, 9},
    {0x10B39, 0x10B3F, 9},
    {0x10B99, 0x10B9C, 9},
    {0x10D30, 0x10D39, 8},
    {0x10D40, 0x10D49, 8},
    {0x10D6E, 0x10D6E, 9},
    {0x10D8E, 0x10D8F, 9},
    {0x10E60, 0x10E7E, 3},
    {0x10EAD, 0x10EAD, 9},
    {0x10EC2, 0x10EC7, 3},
    {0x10ED0, 0x10ED8, 3},
    {0x10EFA, 0x10EFF, 3},
    {0x10F55, 0x10F59, 9},
    {0x10F86, 0x10F89, 9},
    {0x11047, 0x1104D, 9},
    {0x11066, 0x1106F, 8},
    {0x110BB, 0x110BC, 9},
    {0x110BE, 0x110C1, 9},
    {0x110F0, 0x110F9, 8},
    {0x11136, 0x1113F, 8},
    {0x11140, 0x11143, 9},
    {0x11174, 0x11175, 9},
    {0x111C5, 0x111C8, 9},
    {0x111CD, 0x111CD, 9},
    {0x111D0, 0x111D9, 8},
    {0x111DB, 0x111DB, 9},
    {0x111DD, 0x111DF, 9},
    {0x11238, 0x1123D, 9},
    {0x112A9, 0x112A9, 9},
    {0x112F0, 0x112F9, 8},
    {0x113D4, 0x113D5, 9},
    {0x113D7, 0x113D8, 9},
    {0x1144B, 0x1144F, 9},
    {0x11450, 0x11459, 8},
    {0x1145A, 0x1145B, 9},
    {0x1145D, 0x1145D, 9},
    {0x114C6, 0x114C6, 9},
    {0x114D0, 0x114D9, 8},
    {0x115C1, 0x115D7, 9},
    {0x11641, 0x11643, 9},
    {0x11650, 0x11659, 8},
    {0x11660, 0x1166C, 9},
    {0x116B9, 0x116B9, 9},
    {0x116C0, 0x116C9, 8},
    {0x116D0, 0x116E3, 8},
    {0x11730, 0x11739, 8},
    {0x1173C, 0x1173F, 9},
    {0x1183B, 0x1183B, 9},
    {0x118E0, 0x118E9, 8},
    {0x11944, 0x11946, 9},
    {0x11950, 0x11959, 8},
    {0x119E2, 0x119E2, 9},
    {0x11A3F, 0x11A46, 9},
    {0x11A9A, 0x11A9C, 9},
    {0x11A9E, 0x11AA2, 9},
    {0x11B00, 0x11B09, 9},
    {0x11BE1, 0x11BE1, 9},
    {0x11BF0, 0x11BF9, 8},
    {0x11C41, 0x11C45, 9},
    {0x11C50, 0x11C59, 8},
    {0x11C70, 0x11C71, 9},
    {0x11D50, 0x11D59, 8},
    {0x11DA0, 0x11DA9, 8},
    {0x11DE0, 0x11DE9, 8},
    {0x11EF7, 0x11EF8, 9},
    {0x11F43, 0x11F4F, 9},
    {0x11F50, 0x11F59, 8},
    {0x11FD5, 0x11FF1, 9},
    {0x11FFF, 0x11FFF, 9},
    {0x12470, 0x12474, 9},
    {0x12FF1, 0x12FF2, 9},
    {0x16130, 0x16139, 8},
    {0x16A60, 0x16A69, 8},
    {0x16A6E, 0x16A6F, 9},
    {0x16AC0, 0x16AC9, 8},
    {0x16AF5, 0x16AF5, 9},
    {0x16B37, 0x16B3F, 9},
    {0x16B44, 0x16B45, 9},
    {0x16B50, 0x16B59, 8},
    {0x16D6D, 0x16D6F, 9},
    {0x16D70, 0x16D79, 8},
    {0x16E97, 0x16E9A, 9},
    {0x16FE2, 0x16FE3, 0},
    {0x16FF0, 0x16FF6, 0},
    {0x1AFF0, 0x1AFF3, 6},
    {0x1AFF5, 0x1AFFB, 6},
    {0x1AFFD, 0x1AFFE, 6},
    {0x1B000, 0x1B000, 6},
    {0x1B001, 0x1B11F, 5},
    {0x1B120, 0x1B122, 6},
    {0x1B132, 0x1B132, 5},
    {0x1B150, 0x1B152, 5},
    {0x1B155, 0x1B155, 6},
    {0x1B164, 0x1B167, 6},
    {0x1BC9C, 0x1BC9C, 9},
    {0x1BC9F, 0x1BC9F, 9},
    {0x1CC00, 0x1CCEF, 9},
    {0x1CCF0, 0x1CCF9, 8},
    {0x1CCFA, 0x1CCFC, 9},
    {0x1CD00, 0x1CEB3, 9},
    {0x1CEBA, 0x1CED0, 9},
    {0x1CEE0, 0x1CEF0, 9},
    {0x1CF50, 0x1CFC3, 9},
    {0x1D000, 0x1D0F5, 9},
    {0x1D100, 0x1D126, 9},
    {0x1D129, 0x1D164, 9},
    {0x1D16A, 0x1D16C, 9},
    {0x1D183, 0x1D184, 9},
    {0x1D18C, 0x1D1A9, 9},
    {0x1D1AE, 0x1D1EA, 9},
    {0x1D200, 0x1D241, 9},
    {0x1D245, 0x1D245, 9},
    {0x1D300, 0x1D356, 9},
    {0x1D6C1, 0x1D6C1, 9},
    {0x1D6DB, 0x1D6DB, 9},
    {0x1D6FB, 0x1D6FB, 9},
    {0x1D715, 0x1D715, 9},
    {0x1D735, 0x1D735, 9},
    {0x1D74F, 0x1D74F, 9},
    {0x1D76F, 0x1D76F, 9},
    {0x1D789, 0x1D789, 9},
    {0x1D7A9, 0x1D7A9, 9},
    {0x1D7C3, 0x1D7C3, 9},
    {0x1D7CE, 0x1D7FF, 8},
    {0x1D800, 0x1D9FF, 9},
    {0x1DA37, 0x1DA3A, 9},
    {0x1DA6D, 0x1DA74, 9},
    {0x1DA76, 0x1DA83, 9},
    {0x1DA85, 0x1DA8B, 9},
    {0x1DF00, 0x1DF1E, 1},
    {0x1DF25, 0x1DF2A, 1},
    {0x1E030, 0x1E06D, 2},
    {0x1E08F, 0x1E08F, 2},
    {0x1E140, 0x1E149, 8},
    {0x1E14F, 0x1E14F, 9},
    {0x1E2F0, 0x1E2F9, 8},
    {0x1E2FF, 0x1E2FF, 9},
    {0x1E4F0, 0x1E4F9, 8},
    {0x1E5F1, 0x1E5FA, 8},
    {0x1E5FF, 0x1E5FF, 9},
    {0x1E950, 0x1E959, 8},
    {0x1E95E, 0x1E95F, 9},
    {0x1ECAC, 0x1ECAC, 9},
    {0x1ECB0, 0x1ECB0, 9},
    {0x1ED2E, 0x1ED2E, 9},
    {0x1EE00, 0x1EE03, 3},
    {0x1EE05, 0x1EE1F, 3},
    {0x1EE21, 0x1EE22, 3},
    {0x1EE24, 0x1EE24, 3},
    {0x1EE27, 0x1EE27, 3},
    {0x1EE29, 0x1EE32, 3},
    {0x1EE34, 0x1EE37, 3},
    {0x1EE39, 0x1EE39, 3},
    {0x1EE3B, 0x1EE3B, 3},
    {0x1EE42, 0x1EE42, 3},
    {0x1EE47, 0x1EE47, 3},
    {0x1EE49, 0x1EE49, 3},
    {0x1EE4B, 0x1EE4B, 3},
    {0x1EE4D, 0x1EE4F, 3},
    {0x1EE51, 0x1EE52, 3},
    {0x1EE54, 0x1EE54, 3},
    {0x1EE57, 0x1EE57, 3},
    {0x1EE59, 0x1EE59, 3},
    {0x1EE5B, 0x1EE5B, 3},
    {0x1EE5D, 0x1EE5D, 3},
    {0x1EE5F, 0x1EE5F, 3},
    {0x1EE61, 0x1EE62, 3},
    {0x1EE64, 0x1EE64, 3},
    {0x1EE67, 0x1EE6A, 3},
    {0x1EE6C, 0x1EE72, 3},
    {0x1EE74, 0x1EE77, 3},
    {0x1EE79, 0x1EE7C, 3},
    {0x1EE7E, 0x1EE7E, 3},
    {0x1EE80, 0x1EE89, 3},
    {0x1EE8B, 0x1EE9B, 3},
    {0x1EEA1, 0x1EEA3, 3},
    {0x1EEA5, 0x1EEA9, 3},
    {0x1EEAB, 0x1EEBB, 3},
    {0x1EEF0, 0x1EEF1, 3},
    {0x1F000, 0x1F02B, 9},
    {0x1F030, 0x1F093, 9},
    {0x1F0A0, 0x1F0AE, 9},
    {0x1F0B1, 0x1F0BF, 9},
    {0x1F0C1, 0x1F0CF, 9},
    {0x1F0D1, 0x1F0F5, 9},
    {0x1F10D, 0x1F1AD, 9},
    {0x1F1E6, 0x1F1FF, 9},
    {0x1F200, 0x1F200, 5},
    {0x1F201, 0x1F202, 9},
    {0x1F210, 0x1F23B, 9},
    {0x1F240, 0x1F248, 9},
    {0x1F250, 0x1F251, 9},
    {0x1F260, 0x1F265, 9},
    {0x1F300, 0x1F6D8, 9},
    {0x1F6DC, 0x1F6EC, 9},
    {0x1F6F0, 0x1F6FC, 9},
    {0x1F700, 0x1F7D9, 9},
    {0x1F7E0, 0x1F7EB, 9},
    {0x1F7F0, 0x1F7F0, 9},
    {0x1F800, 0x1F80B, 9},
    {0x1F810, 0x1F847, 9},
    {0x1F850, 0x1F859, 9},
    {0x1F860, 0x1F887, 9},
    {0x1F890, 0x1F8AD, 9},
    {0x1F8B0, 0x1F8BB, 9},
    {0x1F8C0, 0x1F8C1, 9},
    {0x1F8D0, 0x1F8D8, 9},
    {0x1F900, 0x1FA57, 9},
    {0x1FA60, 0x1FA6D, 9},
    {0x1FA70, 0x1FA7C, 9},
    {0x1FA80, 0x1FA8A, 9},
    {0x1FA8E, 0x1FAC6, 9},
    {0x1FAC8, 0x1FAC8, 9},
    {0x1FACD, 0x1FADC, 9},
    {0x1FADF, 0x1FAEA, 9},
    {0x1FAEF, 0x1FAF8, 9},
    {0x1FB00, 0x1FB92, 9},
    {0x1FB94, 0x1FBEF, 9},
    {0x1FBF0, 0x1FBF9, 8},
    {0x1FBFA, 0x1FBFA, 9},
    {0x20000, 0x2A6DF, 0},
    {0x2A700, 0x2B81D, 0},
    {0x2B820, 0x2CEAD, 0},
    {0x2CEB0, 0x2EBE0, 0},
    {0x2EBF0, 0x2EE5D, 0},
    {0x2F800, 0x2FA1D, 0},
    {0x30000, 0x3134A, 0},
    {0x31350, 0x33479, 0},
};

inline constexpr std::size_t kScriptRangeCount = sizeof(kScriptRanges) / sizeof(kScriptRanges[0]);

}  // namespace l2::detail
