#!/usr/bin/env python3
"""Regenerates the forum dump fixtures under data/fixtures/dumps."""
import html
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures" / "dumps"


def row_xml(r):
    attrs = [f'Id="{r["Id"]}"', f'PostTypeId="{r["PostTypeId"]}"']
    if "ParentId" in r:
        attrs.append(f'ParentId="{r["ParentId"]}"')
    attrs.append(f'Score="{r.get("Score", 0)}"')
    if "Title" in r:
        attrs.append(f'Title="{html.escape(r["Title"], quote=True)}"')
    attrs.append(f'Body="{html.escape(r["Body"], quote=True)}"')
    if "Tags" in r:
        attrs.append(f'Tags="{html.escape(r["Tags"], quote=True)}"')
    return "  <row " + " ".join(attrs) + " />"


def write(name, rows, jsonl=False):
    OUT.mkdir(parents=True, exist_ok=True)
    xml = ['<?xml version="1.0" encoding="utf-8"?>', "<posts>"] + [row_xml(r) for r in rows] + ["</posts>", ""]
    (OUT / f"{name}.xml").write_text("\n".join(xml))
    if jsonl:
        (OUT / f"{name}.jsonl").write_text("".join(json.dumps(r) + "\n" for r in rows))


def q(id, tags, title, body, score=3):
    return {"Id": id, "PostTypeId": 1, "Score": score, "Title": title, "Body": body,
            "Tags": "".join(f"<{t}>" for t in tags)}


def a(id, parent, body, score=2):
    return {"Id": id, "PostTypeId": 2, "ParentId": parent, "Score": score, "Body": body}


# Six questions: two model-view-controller, one architecture, three python.
INGEST = [
    q(1, ["model-view-controller", "php"], "Where does validation go in MVC?",
      "<p>Should form validation live in the controller or the model?</p>"),
    a(2, 1, "<p>Put it in the <b>model</b>, the controller only routes.</p><pre><code>if (!valid) throw;</code></pre>"),
    a(3, 1, "<p>Models own the rules &amp; controllers call them.</p>"),
    q(4, ["model-view-controller"], "Fat controllers",
      "<p>My controllers have grown to 2&#160;000 lines. Is that normal?</p>"),
    a(5, 4, "<p>No. Move logic into services.</p>"),
    q(6, ["architecture", "design"], "Layers vs tiers",
      "<p>What is the difference between a layer and a tier?</p>"),
    a(7, 6, "<p>Layers are logical, tiers are physical.</p>"),
    q(8, ["python"], "List comprehension speed", "<p>Is a comprehension faster than a loop?</p>"),
    a(9, 8, "<p>Usually a little.</p>"),
    q(10, ["python", "pandas"], "Merge two frames", "<p>How do I join on two columns?</p>"),
    q(11, ["python"], "Virtualenv path", "<p>Where is the interpreter?</p>"),
    a(12, 11, "<p>Run <code>which python</code>.</p>"),
]


EKDB = [
    # MVC and content management
    q(101, ["model-view-controller", "content-management-system"], "MVC for a content management system",
      "<p>We are building a content management system for a university. Is MVC a good fit for managing pages and content?</p>", 12),
    a(102, 101, "<p>MVC is a natural fit for a content management system. The clean separation of logic from templates "
                "makes the content easy to manage and the views are easy to theme. Joomla, Drupal and WordPress plugins all "
                "follow an MVC style and it works great.</p>", 25),
    a(103, 101, "<p>I recommend MVC. Content management with MVC has been a success for us: editors work with views, the "
                "model handles content and the controller handles requests. Highly maintainable.</p>", 14),
    q(104, ["model-view-controller", "web"], "Is MVC good for a CMS with many page templates?",
      "<p>Our content management system has dozens of page templates. Will MVC help?</p>", 6),
    a(105, 104, "<p>Yes, MVC handles this well. Each template is a view over the same content model, so a content "
                "management system stays flexible and clean.</p>", 9),
    q(106, ["model-view-controller"], "MVC controller bloat",
      "<p>Our MVC controllers are bloated and the code is a mess. Any advice?</p>", 1),
    a(107, 106, "<p>Fat controllers are a common problem in MVC; move logic into the model.</p>", 3),
    # Pipes and filters, shells
    q(201, ["pipes-and-filters", "shell"], "Pipes and filters for a Unix shell",
      "<p>I am writing a small shell for teaching. Should the command execution use pipes and filters?</p>", 10),
    a(202, 201, "<p>Absolutely. A shell is the classic pipes and filters system: each command is a filter and the pipe "
                "connects them. It is elegant, easy to extend and students love it.</p>", 18),
    a(203, 201, "<p>Pipes and filters is the best choice for a shell or terminal emulator. Composing small commands "
                "is simple and powerful, and adding a new filter is easy.</p>", 11),
    q(204, ["pipes-and-filters"], "Pipes and filters error handling",
      "<p>In a pipes and filters design, how do I report errors from the middle of the pipeline?</p>", 4),
    a(205, 204, "<p>Error handling in pipes and filters is awkward; use a side channel like stderr.</p>", 5),
    q(206, ["pipes-and-filters", "compiler"], "Compiler stages as filters",
      "<p>Is it good to structure compiler passes as pipes and filters?</p>", 7),
    a(207, 206, "<p>Yes, lexer, parser and code generator as filters works well for a simple compiler.</p>", 6),
    # Microkernel, environments and plugins
    q(301, ["microkernel", "virtualization"], "Microkernel for an environment compatibility tool",
      "<p>We want a development environment tool that runs code written for one environment on another, like Vagrant. "
      "Is a microkernel with plugins appropriate?</p>", 8),
    a(302, 301, "<p>A microkernel works well here. Each environment is a plugin around a small core, which keeps the "
                "tool flexible and portable.</p>", 9),
    a(303, 301, "<p>We used a microkernel core with provider plugins for a development environment tool and it was "
                "a good decision, easy to support new platforms.</p>", 4),
    q(304, ["microkernel", "operating-system"], "Microkernel performance",
      "<p>Is a microkernel operating system slower because of message passing?</p>", 5),
    a(305, 304, "<p>There is overhead, but modern microkernels are fast enough.</p>", 6),
    # Layers
    q(401, ["layered-architecture"], "Layered architecture for a web application",
      "<p>Is a layered architecture with presentation, business and data layers still useful?</p>", 9),
    a(402, 401, "<p>Layers are useful and simple; just avoid too many layers, which adds overhead.</p>", 7),
    q(403, ["layered-architecture", "architecture"], "Too many layers",
      "<p>Our layered design has eight layers and every change touches all of them. This is painful.</p>", 2),
    a(404, 403, "<p>Too many layers is overkill. Collapse the pass-through layers.</p>", 4),
    # Broker
    q(501, ["broker", "middleware"], "Broker for distributed services",
      "<p>Should our distributed middleware use a broker between clients and servers?</p>", 5),
    a(502, 501, "<p>A broker gives location transparency and is a good fit for middleware, though it can become a "
                "bottleneck.</p>", 6),
    # Blackboard
    q(601, ["software-architecture", "expert-system"], "Blackboard architecture for an expert system",
      "<p>Is the blackboard pattern suitable for an expert system with many knowledge sources?</p>", 4),
    a(602, 601, "<p>Blackboard is a good fit for expert systems and speech recognition, but testing is hard.</p>", 3),
    # Reflection
    q(701, ["design-patterns"], "Reflection for runtime configuration",
      "<p>Using reflection to change behavior at runtime: good idea?</p>", 2),
    a(702, 701, "<p>Reflection is powerful but can be slow and fragile; use it sparingly.</p>", 3),
    # Irrelevant posts that the tag filter must drop
    q(801, ["python"], "MVC in Flask",
      "<p>Flask MVC is terrible and awful, avoid it.</p>", -2),
    a(802, 801, "<p>It is fine.</p>", 0),
]


if __name__ == "__main__":
    write("ingest_posts", INGEST, jsonl=True)
    write("ekdb_posts", EKDB)
