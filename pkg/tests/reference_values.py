"""Frozen reference constants for the test-suite.

Generated by tests/tools/freeze_reference_values.py (closed-form
moment identities plus one Monte-Carlo route); do not edit by hand.
"""

# Asymptotic relative efficiency, closed-form truth per setting.
REFERENCE_ARE = {
    ('exponential', (1.0,)): {
        0.1: (0.9677291421605038),
        0.2: (0.8978195346647214),
        0.3: (0.8190678240587739),
        0.4: (0.7459975678899177),
        0.5: (0.6837606837606836),
        0.7: (0.5916724183284628),
        1.0: (0.5094339622641509),
    },
    ('gamma', (5.0, 0.05)): {
        0.1: (0.9788477022732072, 0.9749914770094685),
        0.2: (0.9312525305800397, 0.919417666676527),
        0.3: (0.8736599211244648, 0.8535765294412004),
        0.4: (0.8153119826709, 0.7885375754176985),
        0.5: (0.760856816319306, 0.7294467860844652),
        0.7: (0.6697597139710677, 0.6344573390007315),
        1.0: (0.5747204717002385, 0.5417918958088291),
    },
    ('gamma', (10.0, 0.05)): {
        0.1: (0.9772160935691107, 0.9753582986204037),
        0.2: (0.9259635768423021, 0.9202783252827974),
        0.3: (0.8642954296882583, 0.8546908434232676),
        0.4: (0.8023806172418732, 0.7896470799066482),
        0.5: (0.7452203278498724, 0.7303754341719549),
        0.7: (0.6512837274743892, 0.6348350645306983),
        1.0: (0.5565158962421445, 0.5416038039063468),
    },
    ('weibull', (2.0, 0.01)): {
        0.1: (0.9806756045032394, 0.9924475903101801),
        0.2: (0.9385971690500592, 0.9717690918776244),
        0.3: (0.8883690110329714, 0.9414157671723077),
        0.4: (0.8373464543842924, 0.9049113546800592),
        0.5: (0.7891352624970074, 0.8653672457860262),
        0.7: (0.7063641428069506, 0.786207224479589),
        1.0: (0.6162318409762947, 0.6840260525992465),
    },
    ('weibull', (4.0, 0.01)): {
        0.1: (0.9801520890009896, 0.9900886759046545),
        0.2: (0.9351688698084605, 0.965689772455657),
        0.3: (0.8802749194319898, 0.9327124556378246),
        0.4: (0.8241874990721657, 0.8950584186499057),
        0.5: (0.7714416273989291, 0.855313870513715),
        0.7: (0.6825596553492072, 0.7757904617909901),
        1.0: (0.5902134911199957, 0.6675607191493147),
    },
    ('lognormal', (5.0, 0.2)): {
        0.1: (0.987548871253876, 0.9747583015865863),
        0.2: (0.9582037914285189, 0.9186094837984538),
        0.3: (0.9202850159483735, 0.8520995206218362),
        0.4: (0.8787654679648443, 0.7864701640666548),
        0.5: (0.8365695518854116, 0.7269370598376286),
        0.7: (0.7560129771575754, 0.6315062444367394),
        1.0: (0.651977888593093, 0.538931645818304),
    },
    ('lognormal', (5.0, 0.4)): {
        0.1: (0.9873072622072728, 0.9723715795355348),
        0.2: (0.9569345805648284, 0.9123657761299977),
        0.3: (0.9175530937570735, 0.8429639708778773),
        0.4: (0.8747985727174185, 0.7759170566217384),
        0.5: (0.8321049219612264, 0.7161893320857594),
        0.7: (0.7534825596575949, 0.622312241991393),
        1.0: (0.6580372589328506, 0.5324255893269663),
    },
}

# Two-decimal printed values the reference table reports.
TABULATED_ARE = {
    ('exponential', (1.0,)): {
        0.1: (0.97),
        0.2: (0.9),
        0.3: (0.82),
        0.4: (0.75),
        0.5: (0.68),
        0.7: (0.59),
        1.0: (0.51),
    },
    ('gamma', (5.0, 0.05)): {
        0.1: (0.98, 0.98),
        0.2: (0.94, 0.93),
        0.3: (0.88, 0.86),
        0.4: (0.82, 0.8),
        0.5: (0.77, 0.74),
        0.7: (0.68, 0.64),
        1.0: (0.58, 0.55),
    },
    ('gamma', (10.0, 0.05)): {
        0.1: (0.98, 0.98),
        0.2: (0.93, 0.93),
        0.3: (0.87, 0.86),
        0.4: (0.81, 0.79),
        0.5: (0.75, 0.73),
        0.7: (0.66, 0.64),
        1.0: (0.56, 0.54),
    },
    ('weibull', (2.0, 0.01)): {
        0.1: (0.98, 0.99),
        0.2: (0.94, 0.97),
        0.3: (0.9, 0.94),
        0.4: (0.84, 0.91),
        0.5: (0.79, 0.87),
        0.7: (0.71, 0.79),
        1.0: (0.62, 0.69),
    },
    ('weibull', (4.0, 0.01)): {
        0.1: (0.99, 0.99),
        0.2: (0.94, 0.97),
        0.3: (0.88, 0.93),
        0.4: (0.82, 0.9),
        0.5: (0.78, 0.86),
        0.7: (0.69, 0.78),
        1.0: (0.59, 0.67),
    },
    ('lognormal', (5.0, 0.2)): {
        0.1: (0.99, 0.98),
        0.2: (0.96, 0.92),
        0.3: (0.92, 0.85),
        0.4: (0.88, 0.79),
        0.5: (0.84, 0.73),
        0.7: (0.76, 0.63),
        1.0: (0.65, 0.54),
    },
    ('lognormal', (5.0, 0.4)): {
        0.1: (0.99, 0.98),
        0.2: (0.96, 0.92),
        0.3: (0.92, 0.85),
        0.4: (0.88, 0.78),
        0.5: (0.83, 0.72),
        0.7: (0.76, 0.63),
        1.0: (0.66, 0.54),
    },
}

# Closed-form J, K (with xi xi^T already subtracted) and xi.
SANDWICH_SPOTS = {
    ('gamma', (5.0, 0.05), 0.5): {
        'J': ((0.012426104035693353, -1.0892933604842034), (-1.0892933604842034, 103.29452489250507)),
        'K': ((0.0008171295053607606, -0.07070553735517551), (-0.07070553735517551, 6.550480217434858)),
        'xi': (-0.003109396480812315, 0.5342820253060622),
    },
    ('gamma', (2.0, 1.0), 0.25): {
        'J': ((0.38589688944814104, -0.55868709681021), (-0.55868709681021, 1.0149514838730145)),
        'K': ((0.24156525978278512, -0.3348133834238915), (-0.3348133834238915, 0.5707893619949702)),
        'xi': (-0.050323365475334815, 0.13715560592878573),
    },
    ('lognormal', (0.0, 1.0), 0.5): {
        'J': ((0.43596953339720756, -0.20760453971295598), (-0.20760453971295598, 0.6920151323765201)),
        'K': ((0.2367519495380347, -0.15910513920842712), (-0.15910513920842712, 0.3693395655450573)),
        'xi': (-0.1868440857416604, -0.12456272382777367),
    },
    ('lognormal', (5.0, 0.4), 0.3): {
        'J': ((0.9558017245494781, -0.14931073711933093), (-0.14931073711933093, 1.5472762042711858)),
        'K': ((0.15986222581487827, -0.03862321705884889), (-0.03862321705884889, 0.22857187290809147)),
        'xi': (-0.04537585789096731, -0.10925110399902133),
    },
    ('weibull', (5.0, 1.0), 0.5): {
        'J': ((0.04230703440210393, 0.1458231358717801), (0.1458231358717801, 17.61921739384318)),
        'K': ((0.03344367657694934, 0.05776552038987119), (0.05776552038987119, 15.238977965934389)),
        'xi': (0.06797494591333857, 0.37487696582645114),
    },
    ('weibull', (2.0, 0.01), 0.7): {
        'J': ((0.006172253303591855, -0.05271557181648183), (-0.05271557181648183, 573.830884974656)),
        'K': ((0.0001321770882760042, -0.007244086375034821), (-0.007244086375034821, 11.704255894985206)),
        'xi': (0.0039285934620671105, 1.159352721765434),
    },
}

# Influence-function vectors via the closed-form J and xi.
IF_SPOTS = {
    ('gamma', (5.0, 1.0), 0.0, 10.0): (-9.545232750423988, -2.9090465500847977),
    ('gamma', (5.0, 1.0), 0.5, 10.0): (-11.142304922423643, -3.0489435491521655),
    ('lognormal', (0.0, 1.0), 0.0, 3.0): (1.0986122886681098, 0.10347448040629104),
    ('weibull', (5.0, 1.0), 0.5, 1.2): (-1.798827645304789, -0.398306988247609),
    ('exponential', (2.0,), 0.5, 1.0): (-3.1865489823257884),
}

# norm(IF(1e6 q99)) / norm(IF(q99)) at alpha=0, closed form.
IF_GROWTH_RATIOS = {
    ('exponential', (1.0,)): 1277379.1384070055,
    ('gamma', (5.0, 1.0)): 6101596.744909437,
    ('lognormal', (0.0, 1.0)): 40.79287275412691,
    ('weibull', (5.0, 1.0)): 1.0820224852129896e+32,
}

# Median of the gamma(5, 1) distribution (regularized-P inverse).
GAMMA_5_1_MEDIAN = 4.670908882795985

# Hand-summed leave-one-out CVM distance, exponential {1,2,3}, alpha=0.
CVM3_EXPONENTIAL = 0.015003609829470651

# Per-observation divergence term, lognormal(0,1), alpha=0.5, x=1.
LOGNORMAL_V_HALF_AT_1 = -1.3343240760132127

# Monte-Carlo (1e7 draws) weighted-moment estimates for
# gamma(5, 0.05) at alpha=0.5: raw second moments and xi, with SEs.
MC_GAMMA_5_005_A05 = {
    'J_aa': (0.012420169462735522, 4.353240376830758e-06),
    'J_ab': (-1.088935178157544, 0.0003297155333244583),
    'J_bb': (103.27622039056764, 0.02910347657993036),
    'K_aa': (0.0008265089191771631, 2.620373872958148e-07),
    'K_ab': (-0.07234907390396221, 2.0660450228958064e-05),
    'K_bb': (6.835076425838149, 0.0017007499331752518),
    'xi_a': (-0.0031109264688657504, 9.037870632413775e-06),
    'xi_b': (0.5346970655515088, 0.0008092697618179462),
}

