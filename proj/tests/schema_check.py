#!/usr/bin/env python3
# Copyright 2026 The MoPS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
################################################################################
"""Validates records and signatures written by the CLI against schema/."""

import copy
import json
import pathlib
import subprocess
import sys
import tempfile
import zipfile

import jsonschema
from referencing import Registry, Resource


def run(cli, cwd, *args):
    done = subprocess.run([cli, *args], cwd=cwd, capture_output=True, text=True)
    if done.returncode != 0:
        sys.exit("command failed (%d): %s\n%s" % (done.returncode, " ".join(args),
                                                   done.stderr))


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values())
    record = jsonschema.Draft202012Validator(
        schemas["evidence-record.schema.json"], registry=registry)
    signature = jsonschema.Draft202012Validator(
        schemas["document-signature.schema.json"], registry=registry)

    with tempfile.TemporaryDirectory() as tmp:
        for name in ("a.txt", "b.txt", "c.txt"):
            pathlib.Path(tmp, name).write_text("contents of " + name + "\n")
        run(cli, tmp, "sign", "a.txt", "b.txt", "c.txt", "--clock", "2020-03-01")
        signed = ["a.txt.mops.zip", "b.txt.mops.zip", "c.txt.mops.zip"]
        archives = []
        for structure, extra in (("AS", []), ("AS", ["--cumulate"]),
                                 ("MTS", []), ("MDS", []), ("SLS", ["--batch"]),
                                 ("NAW", ["--batch"]), ("NAW", ["--cumulate"])):
            out = "%s%s.mops.zip" % (structure, "".join(extra))
            run(cli, tmp, "protect", *signed, "--structure", structure, *extra,
                "--out", out, "--clock", "2020-03-02")
            run(cli, tmp, "renew", out, "--clock", "2020-09-01", "--hash", "SHA-384")
            archives.append(out)
        run(cli, tmp, "migrate", "AS.mops.zip", "--structure", "SLS",
            "--out", "migrated-sls.mops.zip", "--clock", "2020-10-01", "--hash", "SHA-384")
        run(cli, tmp, "migrate", "MTS.mops.zip", "--structure", "NAW",
            "--out", "migrated-naw.mops.zip", "--clock", "2020-10-01", "--hash", "SHA-384")
        archives += ["migrated-sls.mops.zip", "migrated-naw.mops.zip"]

        records = signatures = 0
        failures = []
        sample = None
        for archive in archives:
            with zipfile.ZipFile(pathlib.Path(tmp, archive)) as z:
                for entry in z.namelist():
                    if entry.endswith(".er.json"):
                        doc, validator = json.loads(z.read(entry)), record
                        records += 1
                        sample = sample or doc
                    elif entry.endswith(".sig.json"):
                        doc, validator = json.loads(z.read(entry)), signature
                        signatures += 1
                    else:
                        continue
                    for error in validator.iter_errors(doc):
                        failures.append("%s/%s: %s" % (archive, entry, error.message))

        # The schema must also refuse what the strict reader refuses.
        negatives = 0
        for mutate in (lambda d: d.__setitem__("comment", "x"),
                       lambda d: d.__setitem__("format-version", 2),
                       lambda d: d.__setitem__("created-at", "2020-03-02"),
                       lambda d: d["state"].__setitem__("extra", [])):
            bad = copy.deepcopy(sample)
            mutate(bad)
            if record.is_valid(bad):
                failures.append("schema accepted an invalid record")
            negatives += 1

    for f in failures[:20]:
        print("FAIL", f)
    print("%d records, %d signatures, %d negative cases, %d failures"
          % (records, signatures, negatives, len(failures)))
    return 1 if failures or records == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
