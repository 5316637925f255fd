"""vrank: rank LLM-generated Verilog candidates by simulation self-consistency.

Kept import-light on purpose: the bundled mock simulator is spawned as
``python -m vrank.mock_sim`` once per compile/run phase, and every subprocess
pays for whatever this module pulls in.
"""

__version__ = "0.1.0"

_LAZY = {
    "Problem": "vrank.model",
    "Candidate": "vrank.model",
    "TestCase": "vrank.model",
    "Testbench": "vrank.model",
    "ExecutionTrace": "vrank.model",
    "TraceStatus": "vrank.model",
    "Cluster": "vrank.model",
    "ScoredCluster": "vrank.model",
    "ReferencePrediction": "vrank.model",
    "RunReport": "vrank.model",
    "LlmGateway": "vrank.gateway",
    "ProviderConfig": "vrank.gateway",
    "assemble_testbench": "vrank.testbench",
    "SimulatorConfig": "vrank.simulate",
    "run_candidate": "vrank.simulate",
    "run_all": "vrank.simulate",
    "cluster_traces": "vrank.cluster",
    "strict_loss": "vrank.scoring",
    "case_loss": "vrank.scoring",
    "score_clusters": "vrank.scoring",
    "rank_clusters": "vrank.scoring",
    "select_representatives": "vrank.scoring",
    "find_distinguishing_case": "vrank.resolve",
    "resolve": "vrank.resolve",
    "pass_at_k": "vrank.evaluation",
    "judge_candidate": "vrank.evaluation",
    "run_benchmark": "vrank.evaluation",
    "run_pipeline": "vrank.pipeline",
}


def __getattr__(name):
    if name in _LAZY:
        import importlib

        module = importlib.import_module(_LAZY[name])
        return getattr(module, name)
    raise AttributeError(f"module 'vrank' has no attribute {name!r}")
