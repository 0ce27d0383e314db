"""Frozen expected values shared by the unit and acceptance tests.

The throughput grid is the published reference table of display-rounded
Mbit/s values for c = 1, MSS = 1460 bytes. Its first column is labeled
RTT = 0.1 ms but the printed numbers correspond to RTT = 0.05 ms (an
upstream typo: they are 10x, not 5x, the 0.5 ms column), so that column is
kept separate and checked against 0.05 ms.

All other values were computed with independent direct-summation oracles
(math.fsum over explicitly enumerated terms) and frozen here; the oracles
themselves are re-run in the acceptance suite.
"""

# --- Throughput reference grid -------------------------------------------
# Columns: RTT in ms, 0.5 .. 10.0 step 0.5. Rows: PLR in percent.
TABLE_RTT_MS = [x / 2 for x in range(1, 21)]
TABLE_PLR_PERCENT = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30,
                     0.40, 0.50, 0.60, 0.70, 0.80, 0.90, 1.00]
TABLE_MBPS = [
    [1045, 522, 348, 261, 209, 174, 149, 131, 116, 104, 95, 87, 80, 75, 70, 65, 61, 58, 55, 52],
    [739, 369, 246, 185, 148, 123, 106, 92, 82, 74, 67, 62, 57, 53, 49, 46, 43, 41, 39, 37],
    [603, 302, 201, 151, 121, 101, 86, 75, 67, 60, 55, 50, 46, 43, 40, 38, 35, 34, 32, 30],
    [522, 261, 174, 131, 104, 87, 75, 65, 58, 52, 47, 44, 40, 37, 35, 33, 31, 29, 27, 26],
    [467, 234, 156, 117, 93, 78, 67, 58, 52, 47, 42, 39, 36, 33, 31, 29, 27, 26, 25, 23],
    [426, 213, 142, 107, 85, 71, 61, 53, 47, 43, 39, 36, 33, 30, 28, 27, 25, 24, 22, 21],
    [369, 185, 123, 92, 74, 62, 53, 46, 41, 37, 34, 31, 28, 26, 25, 23, 22, 21, 19, 18],
    [330, 165, 110, 83, 66, 55, 47, 41, 37, 33, 30, 28, 25, 24, 22, 21, 19, 18, 17, 17],
    [302, 151, 101, 75, 60, 50, 43, 38, 34, 30, 27, 25, 23, 22, 20, 19, 18, 17, 16, 15],
    [279, 140, 93, 70, 56, 47, 40, 35, 31, 28, 25, 23, 21, 20, 19, 17, 16, 16, 15, 14],
    [261, 131, 87, 65, 52, 44, 37, 33, 29, 26, 24, 22, 20, 19, 17, 16, 15, 15, 14, 13],
    [246, 123, 82, 62, 49, 41, 35, 31, 27, 25, 22, 21, 19, 18, 16, 15, 14, 14, 13, 12],
    [234, 117, 78, 58, 47, 39, 33, 29, 26, 23, 21, 19, 18, 17, 16, 15, 14, 13, 12, 12],
]
# The mislabeled first column, as printed (matches RTT = 0.05 ms).
TABLE_FIRST_COLUMN_MBPS = [10447, 7387, 6032, 5223, 4672, 4265, 3694,
                           3304, 3016, 2792, 2612, 2462, 2336]
TABLE_FIRST_COLUMN_TRUE_RTT_MS = 0.05

# --- Zipf hit ratios (fsum oracle) ----------------------------------------
# hit ratio at alpha = 0.8, stored fraction 10%, keyed by catalog size
ZIPF_HR_10PCT = {
    10**4: 0.5706175855129898,
    10**5: 0.5950208480622439,
    10**6: 0.6090664367545691,
}
ZIPF_TOTAL_N1E4_A08 = 27.110644282579962  # sum of j**-0.8, j = 1..1e4
ZIPF_TOP_POPULARITY_N1E4_A08 = 0.03688588104276642  # 1 / the sum above
ZIPF_MIN_STORED_HR50_N1E4_A08 = 603  # smallest K with HR >= 0.5

# --- Traffic shares (fsum oracle) ------------------------------------------
METRO_WEIGHT_SUM_25 = 7.179272434390123  # sum of j**-0.6, j = 1..25
METRO_SHARE_1 = 0.13928988057477856
TOP_ACCESS_SHARE = 0.04711935536742857  # metro share 1 x in-ring weight 1

# --- Network speed-up curves, default topology, traffic-sorted order -------
# (fsum prefix oracle; uniform per-node factor s, NSU(k) = 1 + (s-1)*C(k))
NSU_GOLDEN = {
    1.75: {1: 1.0353395165255714, 10: 1.1702698517080856, 25: 1.2913067984655848,
           50: 1.4239247314838914, 125: 1.6193580605352615, 250: 1.75},
    3.0: {1: 1.094238710734857, 10: 1.4540529378882285, 25: 1.77681812924156,
          50: 2.1304659506237105, 125: 2.6516214947606973, 250: 3.0},
}
