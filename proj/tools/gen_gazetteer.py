#!/usr/bin/env python3
"""Regenerates tests/fixtures/gazetteer_us.tsv.

A compact gazetteer for tests: every state capital plus large and
deliberately ambiguous city names (several Springfields, Portlands, and so
on). Coordinates and populations are approximate; tests only rely on the
values being fixed, mutually consistent, and shaped like the real thing.
"""
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures",
                   "gazetteer_us.tsv")

# name, state, lat, lon, population
CAPITALS = [
    ("Montgomery", "AL", 32.3668, -86.3000, 200603),
    ("Juneau", "AK", 58.3019, -134.4197, 32255),
    ("Phoenix", "AZ", 33.4484, -112.0740, 1608139),
    ("Little Rock", "AR", 34.7465, -92.2896, 202591),
    ("Sacramento", "CA", 38.5816, -121.4944, 513624),
    ("Denver", "CO", 39.7392, -104.9903, 715522),
    ("Hartford", "CT", 41.7658, -72.6734, 121054),
    ("Dover", "DE", 39.1582, -75.5244, 39403),
    ("Washington", "DC", 38.9072, -77.0369, 689545),
    ("Tallahassee", "FL", 30.4383, -84.2807, 196169),
    ("Atlanta", "GA", 33.7490, -84.3880, 498715),
    ("Honolulu", "HI", 21.3069, -157.8583, 350964),
    ("Boise", "ID", 43.6150, -116.2023, 235684),
    ("Springfield", "IL", 39.7817, -89.6501, 114394),
    ("Indianapolis", "IN", 39.7684, -86.1581, 887642),
    ("Des Moines", "IA", 41.5868, -93.6250, 214133),
    ("Topeka", "KS", 39.0473, -95.6752, 126587),
    ("Frankfort", "KY", 38.2009, -84.8733, 28602),
    ("Baton Rouge", "LA", 30.4515, -91.1871, 227470),
    ("Augusta", "ME", 44.3106, -69.7795, 18899),
    ("Annapolis", "MD", 38.9784, -76.4922, 40812),
    ("Boston", "MA", 42.3601, -71.0589, 675647),
    ("Lansing", "MI", 42.7325, -84.5555, 112644),
    ("Saint Paul", "MN", 44.9537, -93.0900, 311527),
    ("Jackson", "MS", 32.2988, -90.1848, 153701),
    ("Jefferson City", "MO", 38.5767, -92.1735, 43228),
    ("Helena", "MT", 46.5891, -112.0391, 32091),
    ("Lincoln", "NE", 40.8136, -96.7026, 291082),
    ("Carson City", "NV", 39.1638, -119.7674, 58639),
    ("Concord", "NH", 43.2081, -71.5376, 43976),
    ("Trenton", "NJ", 40.2206, -74.7597, 90871),
    ("Santa Fe", "NM", 35.6870, -105.9378, 87505),
    ("Albany", "NY", 42.6526, -73.7562, 99224),
    ("Raleigh", "NC", 35.7796, -78.6382, 467665),
    ("Bismarck", "ND", 46.8083, -100.7837, 73622),
    ("Columbus", "OH", 39.9612, -82.9988, 905748),
    ("Oklahoma City", "OK", 35.4676, -97.5164, 681054),
    ("Salem", "OR", 44.9429, -123.0351, 175535),
    ("Harrisburg", "PA", 40.2732, -76.8867, 50099),
    ("Providence", "RI", 41.8240, -71.4128, 190934),
    ("Columbia", "SC", 34.0007, -81.0348, 136632),
    ("Pierre", "SD", 44.3683, -100.3510, 14091),
    ("Nashville", "TN", 36.1627, -86.7816, 689447),
    ("Austin", "TX", 30.2672, -97.7431, 961855),
    ("Salt Lake City", "UT", 40.7608, -111.8910, 199723),
    ("Montpelier", "VT", 44.2601, -72.5754, 8074),
    ("Richmond", "VA", 37.5407, -77.4360, 226610),
    ("Olympia", "WA", 47.0379, -122.9007, 55605),
    ("Charleston", "WV", 38.3498, -81.6326, 48864),
    ("Madison", "WI", 43.0731, -89.4012, 269840),
    ("Cheyenne", "WY", 41.1400, -104.8202, 65132),
]

EXTRAS = [
    # large cities
    ("New York", "NY", 40.7128, -74.0060, 8804190),
    ("Los Angeles", "CA", 34.0522, -118.2437, 3898747),
    ("Chicago", "IL", 41.8781, -87.6298, 2746388),
    ("Houston", "TX", 29.7604, -95.3698, 2304580),
    ("Philadelphia", "PA", 39.9526, -75.1652, 1603797),
    ("San Antonio", "TX", 29.4241, -98.4936, 1434625),
    ("San Diego", "CA", 32.7157, -117.1611, 1386932),
    ("Dallas", "TX", 32.7767, -96.7970, 1304379),
    ("San Jose", "CA", 37.3382, -121.8863, 1013240),
    ("Jacksonville", "FL", 30.3322, -81.6557, 949611),
    ("Seattle", "WA", 47.6062, -122.3321, 737015),
    ("Detroit", "MI", 42.3314, -83.0458, 639111),
    ("Memphis", "TN", 35.1495, -90.0490, 633104),
    ("Baltimore", "MD", 39.2904, -76.6122, 585708),
    ("Milwaukee", "WI", 43.0389, -87.9065, 577222),
    ("Albuquerque", "NM", 35.0844, -106.6504, 564559),
    ("Tucson", "AZ", 32.2226, -110.9747, 542629),
    ("Fresno", "CA", 36.7378, -119.7871, 542107),
    ("Mesa", "AZ", 33.4152, -111.8315, 504258),
    ("Kansas City", "MO", 39.0997, -94.5786, 508090),
    ("Kansas City", "KS", 39.1141, -94.6275, 156607),
    ("Miami", "FL", 25.7617, -80.1918, 442241),
    ("Omaha", "NE", 41.2565, -95.9345, 486051),
    ("Minneapolis", "MN", 44.9778, -93.2650, 429954),
    ("New Orleans", "LA", 29.9511, -90.0715, 383997),
    ("Las Vegas", "NV", 36.1699, -115.1398, 641903),
    ("Anchorage", "AK", 61.2181, -149.9003, 291247),
    ("Tampa", "FL", 27.9506, -82.4572, 384959),
    ("Orlando", "FL", 28.5383, -81.3792, 307573),
    ("Pittsburgh", "PA", 40.4406, -79.9959, 302971),
    ("Cincinnati", "OH", 39.1031, -84.5120, 309317),
    ("Cleveland", "OH", 41.4993, -81.6944, 372624),
    ("Buffalo", "NY", 42.8864, -78.8784, 278349),
    ("Saint Louis", "MO", 38.6270, -90.1994, 301578),
    ("Birmingham", "AL", 33.5186, -86.8104, 200733),
    ("Charlotte", "NC", 35.2271, -80.8431, 874579),
    ("Louisville", "KY", 38.2527, -85.7585, 633045),
    ("Savannah", "GA", 32.0809, -81.0912, 147780),
    ("Fargo", "ND", 46.8772, -96.7898, 125990),
    ("Sioux Falls", "SD", 43.5446, -96.7311, 192517),
    ("Billings", "MT", 45.7833, -108.5007, 117116),
    ("Burlington", "VT", 44.4759, -73.2121, 44743),
    ("Wilmington", "DE", 39.7391, -75.5398, 70898),
    ("Manchester", "NH", 42.9956, -71.4548, 115644),
    ("Newark", "NJ", 40.7357, -74.1724, 311549),
    ("Bridgeport", "CT", 41.1792, -73.1894, 148654),
    ("Wichita", "KS", 37.6872, -97.3301, 397532),
    ("Tulsa", "OK", 36.1540, -95.9928, 413066),
    ("El Paso", "TX", 31.7619, -106.4850, 678815),
    ("Boulder", "CO", 40.0150, -105.2705, 108250),
    ("Spokane", "WA", 47.6588, -117.4260, 228989),
    ("Eugene", "OR", 44.0521, -123.0868, 176654),
    ("Provo", "UT", 40.2338, -111.6585, 115162),
    ("Norfolk", "VA", 36.8508, -76.2859, 238005),
    ("Huntington", "WV", 38.4192, -82.4452, 46842),
    ("Gulfport", "MS", 30.3674, -89.0928, 72926),
    ("Fayetteville", "AR", 36.0626, -94.1574, 93949),
    ("Honolulu East", "HI", 21.2900, -157.7000, 50000),
    ("Idaho Falls", "ID", 43.4917, -112.0339, 64818),
    ("Louisville East", "KY", 38.2400, -85.5800, 30000),
    # deliberately ambiguous names across states
    ("Springfield", "MA", 42.1015, -72.5898, 155929),
    ("Springfield", "MO", 37.2090, -93.2923, 169176),
    ("Springfield", "OR", 44.0462, -123.0220, 61851),
    ("Portland", "OR", 45.5152, -122.6784, 652503),
    ("Portland", "ME", 43.6591, -70.2568, 68408),
    ("Columbus", "GA", 32.4610, -84.9877, 206922),
    ("Charleston", "SC", 32.7765, -79.9311, 150277),
    ("Rochester", "NY", 43.1566, -77.6088, 211328),
    ("Rochester", "MN", 44.0121, -92.4802, 121395),
    ("Aurora", "CO", 39.7294, -104.8319, 386261),
    ("Aurora", "IL", 41.7606, -88.3201, 180542),
    ("Arlington", "TX", 32.7357, -97.1081, 394266),
    ("Arlington", "VA", 38.8816, -77.0910, 238643),
    ("Gainesville", "FL", 29.6516, -82.3248, 141085),
    ("Gainesville", "GA", 34.2979, -83.8241, 42296),
    ("Jackson", "WY", 43.4799, -110.7624, 10760),
    ("Jackson", "TN", 35.6145, -88.8139, 68205),
    ("Augusta", "GA", 33.4735, -82.0105, 202081),
    ("Columbia", "MO", 38.9517, -92.3341, 126254),
    ("Richmond", "CA", 37.9358, -122.3477, 116448),
    ("Albany", "GA", 31.5785, -84.1557, 69647),
    ("Albany", "OR", 44.6365, -123.1059, 56472),
    ("Concord", "CA", 37.9780, -122.0311, 125410),
    ("Concord", "NC", 35.4088, -80.5795, 105240),
    ("Salem", "MA", 42.5195, -70.8967, 44480),
    ("Dover", "NH", 43.1979, -70.8737, 32741),
    ("Lincoln", "RI", 41.9094, -71.4345, 22529),
]


def main():
    rows = CAPITALS + EXTRAS
    with open(OUT, "w", encoding="utf-8") as f:
        f.write("# name\tstate\tlat\tlon\tpopulation\n")
        for name, st, lat, lon, pop in rows:
            f.write(f"{name}\t{st}\t{lat:.4f}\t{lon:.4f}\t{pop}\n")
    states = {st for _, st, _, _, _ in rows}
    print(f"wrote {len(rows)} places covering {len(states)} states to {OUT}")


if __name__ == "__main__":
    main()
