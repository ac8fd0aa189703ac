class AnalysisConfig:
    tolerance: float = 1e-9
    resolution: int = 101
    gammas: list[float] = [0.0, 0.25, 0.5, 0.75, 1.0]
    theta: float = 0.75
    alpha: float = 1.0
    beta: float = 1.5
    threads: int = 1
    seed: int = 0
    closed_quadrants: bool = False
