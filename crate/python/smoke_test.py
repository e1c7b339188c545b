"""Exercises the tronetl extension module end to end on a small synthetic chain.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python python/smoke_test.py
"""

import json
import tempfile
from pathlib import Path

import tronetl

USDT_BASE58 = "TR7NHqjeKQxGTCi8q8ZY4pL8otSzgjLj6t"
USDT_HEX = "41a614f803b6fd780986a42c78ec9c7f77e6ded13c"


def check_codecs():
    addr = tronetl.Address.from_base58(USDT_BASE58)
    assert addr.to_hex() == USDT_HEX
    assert tronetl.encode_address(bytes(addr)) == USDT_BASE58
    assert tronetl.decode_address(USDT_BASE58).hex() == USDT_HEX
    zero = tronetl.Address(b"\x41" + bytes(20))
    assert tronetl.Address.from_base58(str(zero)) == zero

    topic = tronetl.event_topic("Transfer(address,address,uint256)")
    assert topic == "ddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef"
    assert tronetl.lookup_signature(topic) == "Transfer(address,address,uint256)"


def check_classification():
    types = tronetl.contract_types()
    sizes = {}
    for name in types:
        cat = tronetl.classify(name)["mainCategory"]
        sizes[cat] = sizes.get(cat, 0) + 1
    print("categories:", sizes)
    assert tronetl.classify("NoSuchContract")["tableName"] == "unknownContracts"

    # TransferContract{owner=1, to=2, amount=3}
    owner, to = bytes.fromhex(USDT_HEX), b"\x41" + bytes(20)
    param = b"\x0a\x15" + owner + b"\x12\x15" + to + b"\x18\x64"
    decoded = tronetl.decode_parameter("TransferContract", param)
    assert not decoded["fallback"], decoded
    assert decoded["row"]["amount"] == 100
    assert decoded["row"]["ownerAddress"] == USDT_HEX


def check_pipeline(root: Path):
    truth = tronetl.generate_fixture(str(root / "fx"), seed=5, blocks=40)
    sink = str(root / "sink")
    report = tronetl.run(str(root / "fx"), sink, 0, 39, batch=10)
    assert report["blocksProcessed"] == 40
    for table, n in truth["tableCounts"].items():
        assert report["rowsPerTable"][table] == n, table

    assert tronetl.verify(str(root / "fx"), sink, 0, 39)["discrepancies"] == []

    witnesses = tronetl.stats(sink, "witness_distribution")
    assert [r["blocks"] for r in witnesses] == [10, 10, 10, 10]
    events = tronetl.stats(sink, "event_signature_counts", address=USDT_HEX)
    assert {r["signature"]: r["events"] for r in events} == truth["usdtEventCounts"]
    print(tronetl.stats(sink, "tx_count_by_type", top=5, format="csv"), end="")

    try:
        tronetl.run(str(root / "fx"), sink, 5, 1)
    except tronetl.EtlError as err:
        print("config error surfaced:", err)
    else:
        raise AssertionError("expected EtlError")


def check_schema():
    manifest = tronetl.schema_manifest()
    names = [t["name"] for t in manifest["tables"]]
    assert names == tronetl.table_names()
    assert "ReplacingMergeTree" in tronetl.ddl("blocks", "clickhouse")
    print(json.dumps(manifest["tables"][0], indent=None)[:120], "...")


if __name__ == "__main__":
    check_codecs()
    check_classification()
    check_schema()
    with tempfile.TemporaryDirectory() as tmp:
        check_pipeline(Path(tmp))
    print("smoke test passed")
