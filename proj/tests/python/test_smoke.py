"""End-to-end checks of the Python wrapper against the compiled core."""

import json
import unittest

import nomadsim


class CatalogTest(unittest.TestCase):
    def test_requirement_catalog(self):
        rows = nomadsim.requirement_catalog()
        self.assertEqual(len(rows), 10)
        by_id = {r["id"]: r for r in rows}
        self.assertEqual(by_id["UC2"]["throughput_mbps"], 1.0)
        self.assertEqual(by_id["UC2"]["latency_ms"], 10.0)
        self.assertEqual(by_id["UC2"]["range_m"], 100.0)
        self.assertEqual(by_id["UC7"]["throughput_mbps"], 0.256)
        self.assertIsNone(by_id["UC1"]["range_m"])
        self.assertEqual(by_id["UC1"]["scope"], "global")

    def test_default_rats(self):
        rats = nomadsim.default_rats()
        names = {r["name"] for r in rats}
        self.assertEqual(names, {"mmw26", "local_cell", "long_range"})


class PlacementTest(unittest.TestCase):
    VNFS = [
        {"id": "aaa", "class": "security", "impl_cost": 4.0, "opp_cost": 40.0},
        {"id": "cache", "class": "other", "impl_cost": 12.0, "opp_cost": 6.0},
    ]

    def test_island_matches_brute_force(self):
        for p in (0.0, 0.25, 0.5, 1.0):
            island = nomadsim.plan(strategy="island", vnfs=self.VNFS, p=p)
            best = nomadsim.brute_force_plan(vnfs=self.VNFS, p=p)
            self.assertEqual(island["total_cost"], best["total_cost"])
            self.assertEqual(island["local"], best["local"])

    def test_private_hosts_everything(self):
        plan = nomadsim.plan(strategy="private", vnfs=self.VNFS, p=0.5)
        self.assertEqual(plan["local"], ["aaa", "cache"])
        self.assertEqual(plan["remote"], [])

    def test_unknown_strategy_raises(self):
        with self.assertRaises(ValueError):
            nomadsim.plan(strategy="greedy", vnfs=self.VNFS, p=0.5)

    def test_out_of_range_probability_raises(self):
        with self.assertRaises(ValueError):
            nomadsim.plan(strategy="island", vnfs=self.VNFS, p=1.5)


class ScenarioRoundTripTest(unittest.TestCase):
    def test_generate_validate_run(self):
        scenario = nomadsim.generate("construction", duration_s=120.0)
        verdict = nomadsim.validate(scenario)
        self.assertTrue(verdict["ok"], verdict["violations"])
        self.assertEqual(verdict["hash"], nomadsim.scenario_hash(verdict["scenario"]))

        trace_jsonl, report = nomadsim.run(scenario)
        header = json.loads(trace_jsonl.splitlines()[0])
        self.assertEqual(header["schema"], "nomadsim-trace/1")
        self.assertEqual(report["schema"], "nomadsim-report/1")
        self.assertEqual(report["scenario_hash"], verdict["hash"])
        self.assertGreater(len(report["qos"]["flows"]), 0)

        rescored = nomadsim.report_from_trace(trace_jsonl)
        self.assertEqual(rescored["qos"], report["qos"])

    def test_run_is_deterministic(self):
        scenario = nomadsim.generate("agricultural", duration_s=120.0)
        first_trace, first_report = nomadsim.run(scenario)
        second_trace, second_report = nomadsim.run(scenario)
        self.assertEqual(first_trace, second_trace)
        self.assertEqual(first_report, second_report)

    def test_invalid_scenario_reports_violations(self):
        scenario = nomadsim.generate("construction", duration_s=120.0)
        scenario["flows"][0]["use_case"] = "UC99"
        verdict = nomadsim.validate(scenario)
        self.assertFalse(verdict["ok"])
        kinds = {v["kind"] for v in verdict["violations"]}
        self.assertIn("UnknownUseCase", kinds)
        with self.assertRaises(ValueError):
            nomadsim.run(scenario)

    def test_unknown_template_raises(self):
        with self.assertRaises(ValueError):
            nomadsim.generate("mining")


if __name__ == "__main__":
    unittest.main()
