import json

import pytest

from src.netattack.core.catalog import Catalog, deep_merge
from src.netattack.core.exceptions import AssetSchemaError
from src.netattack.core.factories import ActionFactory


class TestDefaultCatalog:

    def test_every_action_has_an_implementation(self, catalog):
        implementations = set(ActionFactory.implementations())
        for spec in catalog:
            assert spec.implementation in implementations, spec.name

    def test_declaration_order(self, catalog):
        names = catalog.names()
        assert names[0] == "NetworkDiscovery"
        assert names.index("ApacheChunkedEncodingExploit") < names.index("WuFTPglobbingExploit")
        assert catalog.index("CleanLogs") == len(catalog) - 1

    def test_pivot_action_is_high_level(self, catalog):
        assert catalog.get("TCPConnectCreatingHops").high_level
        assert not catalog.get("TCPConnect").high_level

    def test_exploits_carry_port_and_identifier(self, catalog):
        exploits = [s for s in catalog if s.is_exploit]
        assert {s.vulnerability.identifier for s in exploits} == {"CVE-2002-0392", "CVE-2001-0550"}
        assert all(s.port is not None for s in exploits)

    def test_portfolio_by_skill(self, catalog):
        names = [s.name for s in catalog.portfolio(max_skill=1)]
        assert "ApacheChunkedEncodingExploit" in names
        assert "WuFTPglobbingExploit" not in names
        assert "TCPConnectCreatingHops" not in names

    def test_explicit_portfolio_ignores_skill(self, catalog):
        specs = catalog.portfolio(["WuFTPglobbingExploit", "TCPConnect"], max_skill=1)
        assert [s.name for s in specs] == ["TCPConnect", "WuFTPglobbingExploit"]

    def test_unknown_portfolio_action(self, catalog):
        with pytest.raises(AssetSchemaError):
            catalog.portfolio(["NoSuchAction"])

    def test_unknown_action(self, catalog):
        assert "NoSuchAction" not in catalog
        with pytest.raises(KeyError):
            catalog.get("NoSuchAction")


class TestMerge:

    def test_override_keeps_slot_and_unrelated_fields(self, catalog):
        merged = catalog.merged([{"name": "ApacheChunkedEncodingExploit", "cost": {"successProbability": 1.0}}])
        spec = merged.get("ApacheChunkedEncodingExploit")
        assert spec.base_cost.success_probability == 1.0
        assert spec.base_cost.time == catalog.get("ApacheChunkedEncodingExploit").base_cost.time
        assert merged.names() == catalog.names()

    def test_new_actions_are_appended(self, catalog):
        record = catalog.get("ApacheChunkedEncodingExploit").to_dict()
        record["name"] = "ApacheCopy"
        merged = catalog.merged([record])
        assert merged.names()[-1] == "ApacheCopy"
        assert len(merged) == len(catalog) + 1

    def test_base_catalog_untouched(self, catalog):
        before = catalog.records()
        catalog.merged([{"name": "IPConnect", "skill": 4}])
        assert catalog.records() == before

    def test_lists_are_replaced_not_appended(self):
        merged = deep_merge({"a": {"b": [1, 2], "c": 1}}, {"a": {"b": [3]}})
        assert merged == {"a": {"b": [3], "c": 1}}

    def test_duplicate_names_rejected(self, catalog):
        record = catalog.get("IPConnect").to_dict()
        with pytest.raises(AssetSchemaError):
            Catalog([record, record])

    def test_load_from_plain_list(self, tmp_path, catalog):
        path = tmp_path / "catalog.json"
        path.write_text(json.dumps([catalog.get("IPConnect").to_dict()]))
        loaded = Catalog.load(path)
        assert loaded.names() == ["IPConnect"]


class TestActionFactory:

    def test_create(self, catalog):
        action = ActionFactory.create(catalog.get("WuFTPglobbingExploit"))
        assert type(action).__name__ == "Exploit"
        assert action.name == "WuFTPglobbingExploit"

    def test_unsupported_implementation(self, catalog):
        spec = catalog.merged([{"name": "IPConnect", "implementation": "Teleport"}]).get("IPConnect")
        with pytest.raises(ValueError, match="Unsupported action implementation"):
            ActionFactory.create(spec)
