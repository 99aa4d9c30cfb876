#include "turnpike/golden.hpp"

namespace turnpike::golden {

const double kTable1Q[3][2] = {{-0.5, -2.0}, {-2.0, -0.5}, {-0.5, -0.25}};
const double kTable1Merton[3] = {3.0, 3.0, 1.25};

const double kTable1Pi[3][3][7] = {
    {{2.6075, 2.7195, 2.8345, 2.9014, 2.9655, 2.9919, 2.9995},
     {2.6125, 2.7271, 2.8461, 2.9152, 2.9771, 2.9966, 2.9999},
     {2.6174, 2.7344, 2.8569, 2.9273, 2.985, 2.9986, 3.000}},
    {{2.6099, 2.348, 1.9557, 1.7538, 1.6742, 1.8119, 2.4955},
     {2.6149, 2.362, 1.9924, 1.8107, 1.7963, 2.1486, 2.8421},
     {2.6198, 2.3759, 2.0297, 1.8739, 1.9555, 2.4723, 2.9532}},
    {{1.3928, 1.3458, 1.2944, 1.2714, 1.2571, 1.2527, 1.2507},
     {1.3927, 1.3456, 1.2942, 1.2712, 1.2567, 1.2522, 1.2504},
     {1.3927, 1.3455, 1.294, 1.2708, 1.2563, 1.2518, 1.2502}}};

const double kTable2Pi[3][7] = {
    {3.6237, 3.7023, 3.8147, 3.8946, 3.9740, 3.9973, 4.0000},
    {3.6288, 3.7099, 3.8264, 3.9084, 3.9829, 3.9989, 4.0000},
    {3.6340, 3.7175, 3.8376, 3.9209, 3.9889, 3.9996, 4.0000}};

const double kTable2EM[3][7] = {
    {0.1039, 0.0804, 0.0486, 0.0271, 0.0065, 0.0007, 0.0000},
    {0.1023, 0.0782, 0.0454, 0.0234, 0.0043, 0.0003, 0.0000},
    {0.1007, 0.0760, 0.0423, 0.0202, 0.0028, 0.0001, 0.0000}};

const double kTable3C[3][7] = {
    {3.5407, 2.2161, 0.8585, 0.2778, 0.0169, 0.0002, 0.0000},
    {3.4442, 2.1033, 0.7538, 0.2097, 0.0073, 0.0000, 0.0000},
    {3.3497, 1.9947, 0.6593, 0.1564, 0.0031, 0.0000, 0.0000}};

const double kTable3Rc[3][7] = {
    {8.1183, 8.5113, 9.0734, 9.4730, 9.8701, 9.9863, 9.9998},
    {8.1441, 8.5497, 9.1318, 9.5421, 9.9144, 9.9945, 10.0000},
    {8.1698, 8.5877, 9.1880, 9.6045, 9.9444, 9.9978, 10.0000}};

const double kTable3F[3][7] = {
    {0.2318, 0.1749, 0.1021, 0.0556, 0.0132, 0.0014, 0.0000},
    {0.2279, 0.1696, 0.0951, 0.0480, 0.0086, 0.0005, 0.0000},
    {0.2240, 0.1645, 0.0884, 0.0412, 0.0056, 0.0002, 0.0000}};

const double kTable3Abs[3][7] = {
    {0.3763, 0.2977, 0.1853, 0.1054, 0.0260, 0.0027, 0.0000},
    {0.3712, 0.2901, 0.1736, 0.0916, 0.0171, 0.0011, 0.0000},
    {0.3660, 0.2825, 0.1624, 0.0791, 0.0111, 0.0004, 0.0000}};

const double kTable3Cn[3][6] = {
    {0.2343, 0.1580, 0.1128, 0.0933, 0.0900, 0.0900},
    {0.2466, 0.1710, 0.1279, 0.1118, 0.1099, 0.1100},
    {0.2592, 0.1845, 0.1439, 0.1308, 0.1299, 0.1300}};

const double kTable3RateLimit[3] = {0.09, 0.11, 0.13};

const double kTable4Pi[3][7] = {
    {1.2008, 1.1328, 1.0290, 0.9519, 0.8710, 0.8353, 0.8222},
    {1.2017, 1.1356, 1.0386, 0.9722, 0.9151, 0.9025, 0.9055},
    {1.2027, 1.1384, 1.0478, 0.9912, 0.9538, 0.9540, 0.9588}};

const double kTable4E[3][7] = {
    {-0.3155, -0.2744, -0.2012, -0.1365, -0.0563, -0.0160, -0.0003},
    {-0.2450, -0.2011, -0.1265, -0.0668, -0.0086, 0.0053, 0.0020},
    {-0.2023, -0.1573, -0.0845, -0.0321, 0.0059, 0.0056, 0.0006}};

const double kTable4EM[3][7] = {
    {0.1104, 0.1771, 0.2958, 0.4007, 0.5307, 0.5962, 0.6216},
    {0.1095, 0.1741, 0.2838, 0.3714, 0.4570, 0.4775, 0.4725},
    {0.1086, 0.1712, 0.2724, 0.3451, 0.3980, 0.3976, 0.3907}};

const double kTable5Pi[3][3][7] = {
    {{1.0014, 0.8922, 0.7845, 0.7365, 0.7045, 0.6944, 0.6912},
     {1.0032, 0.8961, 0.7921, 0.7472, 0.7201, 0.7152, 0.7163},
     {1.0051, 0.8999, 0.7998, 0.7583, 0.7374, 0.7375, 0.7400}},
    {{1.2008, 1.1328, 1.0290, 0.9519, 0.8710, 0.8353, 0.8222},
     {1.2017, 1.1356, 1.0386, 0.9722, 0.9151, 0.9025, 0.9055},
     {1.2027, 1.1384, 1.0478, 0.9912, 0.9538, 0.9540, 0.9588}},
    {{1.2881, 1.2617, 1.2149, 1.1727, 1.1165, 1.0852, 1.0723},
     {1.2885, 1.2628, 1.2197, 1.1847, 1.1491, 1.1402, 1.1424},
     {1.2888, 1.2640, 1.2242, 1.1953, 1.1738, 1.1739, 1.1768}}};

}  // namespace turnpike::golden
