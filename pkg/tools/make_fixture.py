"""One-off generator for the 50-post test fixture (JSONL + equivalent XML).

Run from the repo root:  python tools/make_fixture.py
"""

import json
import xml.etree.ElementTree as ET
from pathlib import Path

Q = "question"
A = "answer"


def q(id, date, title, body, tags=("android",)):
    return {
        "id": id, "post_type": Q, "parent_id": None, "score": 1,
        "title": title, "body_html": body, "tags": list(tags),
        "creation_date": f"{date}T10:00:00+00:00",
    }


def a(id, parent, score, date, body):
    return {
        "id": id, "post_type": A, "parent_id": parent, "score": score,
        "title": None, "body_html": body, "tags": [],
        "creation_date": f"{date}T11:00:00+00:00",
    }


POSTS = [
    # --- questions -------------------------------------------------------
    q(101, "2015-03-10", "How to use fakeMethod() in an activity?",
      "<p>My app crashes on launch.</p>"
      "<p>Where should I call <code>fakeMethod()</code> from the activity?</p>"),
    q(102, "2016-06-01", "Why does fakeMethod() return early?",
      "<p>I call <code>fakeMethod()</code> but the result is empty.</p>"),
    q(103, "2017-01-20", "Passing data between screens",
      "<p>I pass a bundle with an intent.</p>"
      "<p>Is <code>app.Widget.fakeMethod()</code> the right place to read it?</p>"),
    q(104, "2015-09-05", "Clearing the image cache",
      "<p>Images pile up in memory.</p><p>Does <code>clearCache()</code> help?</p>"),
    q(105, "2018-02-14", "clearCache() does not free memory",
      "<p>Even after <code>clearCache()</code> the heap stays big.</p>"),
    q(106, "2014-11-11", "Layout init crashes on rotate",
      "<p>My screen dies on rotate after <code>initLayout()</code>.</p>"),
    q(107, "2015-05-05", "Keeping form values over rotation",
      "<p>How do I keep form values over rotation with "
      "<code>onSaveInstanceState()</code>?</p>"),
    q(108, "2019-07-07", "Gradle build is slow",
      "<p>Gradle build is slow on my machine.</p>"),
    q(109, "2015-01-01", "Where to call fakeMethod() in plain Java?",
      "<p>Where to call <code>fakeMethod()</code> in plain Java?</p>",
      tags=("java",)),
    q(110, "2021-03-01", "Latest SDK breaks fakeMethod()",
      "<p>Latest SDK breaks <code>fakeMethod()</code>.</p>"),
    q(111, "2016-09-09", "TextView stays empty after update",
      "<p>My <code>TextView</code> inside the <code>Activity</code> stays empty "
      "after <code>fakeMethod()</code> runs.</p>"),
    q(112, "2017-08-08", "When should initLayout() run?",
      "<p>Startup order of the layout code is unclear.</p>"),
    q(113, "2018-05-20", "Best way to load data in the background",
      "<p>Loading from the service blocks the screen.</p>"
      "<p>Can <code>fakeMethod()</code> run in the background?</p>"),
    q(114, "2019-10-10", "Show a toast after the task ends",
      "<p>I want to show a message when the work ends.</p>"),
    q(115, "2019-03-03", "Is clearCache() safe on a background thread?",
      "<p>The docs say nothing about the thread for <code>clearCache()</code>.</p>"),
    q(116, "2014-04-04", "Plain Java equivalent of the cache",
      "<p>Looking for a plain map based cache.</p>", tags=("java", "caching")),
    q(117, "2013-12-01", "Which emulator image is fastest?",
      "<p>The arm image feels slow.</p>"),
    # --- answers ---------------------------------------------------------
    a(201, 101, 5, "2015-03-11",
      "<p>The activity starts and loads the main screen.</p>"
      "<p>You need to call <code>fakeMethod()</code> before the view is created. "
      "Call <code>fakeMethod()</code> before you update the view. "
      "That way the state is saved for later use.</p>"
      "<p>Unrelated trailing remark about tooling.</p>"),
    a(202, 101, 2, "2015-03-12",
      "<p>Just call <code>fakeMethod()</code> twice.</p>"),
    a(203, 101, 3, "2015-04-01",
      "<p><code>fakeMethod()</code> runs first when the app launches. "
      "It creates the layout and shows the first view. "
      "Remember to pass the data bundle to the next screen. "
      "Then <code>fakeMethod()</code> returns the result.</p>"),
    a(204, 102, 7, "2020-06-15",
      "<p>Call <code>fakeMethod()</code> before you update the view. "
      "And that is all.</p>"),
    a(205, 102, -1, "2016-06-02",
      "<p><code>fakeMethod()</code> is broken on some devices.</p>"),
    a(206, 103, 4, "2017-01-21",
      "<p>Intents move data between screens in the app.</p>"
      "<p>Inside <code>fakeMethod()</code> you read the intent bundle and update "
      "the state. The view then shows the loaded values to the user.</p>"),
    a(207, 103, 3, "2017-02-02",
      "<p>You can also call <code>clearCache()</code> when the data looks stale. "
      "The screen then shows the new values.</p>"),
    a(208, 104, 6, "2015-09-06",
      "<p><code>clearCache()</code> frees the image memory right away. "
      "Call it when the screen goes to the background. "
      "Run <code>clearCache()</code> again after the service stops.</p>"),
    a(209, 104, 1, "2015-09-07",
      "<p><code>clearCache()</code> sometimes hangs the thread.</p>"),
    a(210, 105, 3, "2018-02-15",
      "<p>The cache keeps values in memory for the user session. "
      "<code>clearCache()</code> drops every stored value at once. "
      "After that the app loads data from the service again.</p>"),
    a(211, 106, 2, "2014-11-12",
      "<p><code>initLayout()</code> must run on the main thread.</p>"),
    a(212, 106, 9, "2014-12-01",
      "<p>The layout crash comes from an early call into the screen code. "
      "Move the work into <code>fakeMethod()</code> and load the layout after "
      "the view exists. This keeps the state in memory and stops the crash, "
      "then call <code>finish()</code>.</p>"),
    a(213, 107, 8, "2015-05-06",
      "<p>There are two ways to keep the state over a screen rotation.</p>"
      "<ol><li>Use <code>onSaveInstanceState()</code> to store the values in a "
      "bundle.</li><li>In the manifest the entry "
      "<code>android:configChanges=&quot;orientation|screenSize&quot;</code> "
      "stops the restart.</li></ol>"
      "<p>I would not use the second way because half the screen can go black.</p>"
      "<pre><code>class MyModel {\n    Object obj;\n}\n</code></pre>"
      "<p>Run the install from <code>studio.sh</code> and restore with "
      "<code>onRestoreInstanceState()</code>.</p>"),
    a(214, 108, 4, "2019-07-08",
      "<p>The build time depends on the machine.</p>"
      "<p>Check the log output first.</p><p>Use <code>the gradle console for details"),
    a(215, 110, 6, "2021-03-02",
      "<p>Pin the SDK until <code>fakeMethod()</code> is fixed.</p>"),
    a(216, 109, 5, "2015-01-02",
      "<p>Call <code>fakeMethod()</code> from the main entry point.</p>"),
    a(217, 108, 0, "2019-08-01",
      "<p><code>brokenThing()</code> crashes at once.</p>"
      "<p>Calling <code>brokenThing()</code> twice makes it worse.</p>"
      "<p>Avoid <code>brokenThing()</code> until it is fixed.</p>"),
    a(218, 113, 5, "2018-05-21",
      "<p>Run the load on a background thread and post the result back. "
      "<code>fakeMethod()</code> itself must run on the main thread. "
      "Use a callback to update the view with the result.</p>"),
    a(219, 113, 3, "2018-05-22",
      "<p>A service can load the data and keep it in memory. "
      "Then <code>fakeMethod()</code> reads the value from the cache.</p>"),
    a(220, 115, 4, "2019-03-04",
      "<p><code>clearCache()</code> is safe from any thread. "
      "It takes a lock on the cache object while it runs.</p>"),
    a(221, 115, 2, "2019-03-05",
      "<p>Never call <code>clearCache()</code> on the main thread.</p>"),
    a(222, 114, 5, "2019-10-11",
      "<p>Use the toast class and show it from the main thread.</p>"),
    a(223, 101, 4, "2015-06-01",
      "<p>In my example the app calls <code>fakeMethod()</code> after the view "
      "loads. That fixed the crash for me.</p>"),
    a(224, 102, 3, "2016-07-01",
      "<p>Check that the intent carries the data you expect. "
      "An empty bundle makes <code>fakeMethod()</code> return an empty result. "
      "Log the values before the call to see what arrives.</p>"),
    a(225, 104, 3, "2015-10-01",
      "<p>The image cache and the value cache are different things. "
      "<code>clearCache()</code> only clears the image side.</p>"),
    a(226, 105, 5, "2018-03-01",
      "<p>The heap only shrinks after the next garbage pass. "
      "So <code>clearCache()</code> frees the references, not the memory at once. "
      "Wait for the pass or trigger it in a test build.</p>"),
    a(227, 107, 3, "2015-05-07",
      "<p>Store the values in a view model and restore them on create.</p>"),
    a(228, 108, -2, "2019-07-09", "<p>Buy a faster machine.</p>"),
    a(229, 111, 6, "2016-09-10",
      "<p>Set the text after <code>fakeMethod()</code> finishes its work. "
      "The view only updates on the next frame.</p>"),
    a(230, 112, 5, "2017-08-09",
      "<p>The layout code should run after the first frame is drawn.</p>"),
    a(231, 106, 4, "2014-11-13",
      "<p>Rotation restarts the whole screen by default.</p>"),
    a(232, 116, 7, "2014-04-05",
      "<p>Use a linked hash map with a size cap.</p>"),
    a(233, 117, 3, "2013-12-02",
      "<p>In 2015 it worked. The x86 image is the fastest one.</p>"),
]


def write_jsonl(path):
    with open(path, "w", encoding="utf-8") as fh:
        for post in POSTS:
            fh.write(json.dumps(post, ensure_ascii=False) + "\n")


def write_xml(path):
    root = ET.Element("posts")
    for post in POSTS:
        attrs = {
            "Id": str(post["id"]),
            "PostTypeId": "1" if post["post_type"] == Q else "2",
            "Score": str(post["score"]),
            "Body": post["body_html"],
            "CreationDate": post["creation_date"].replace("+00:00", ""),
        }
        if post["post_type"] == Q:
            attrs["Title"] = post["title"]
            attrs["Tags"] = "".join(f"<{t}>" for t in post["tags"])
        else:
            attrs["ParentId"] = str(post["parent_id"])
        ET.SubElement(root, "row", attrs)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)


if __name__ == "__main__":
    fixtures = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)
    write_jsonl(fixtures / "so_fixture.jsonl")
    write_xml(fixtures / "so_fixture.xml")
    print(f"wrote {len(POSTS)} posts ({sum(p['post_type'] == Q for p in POSTS)} "
          f"questions) to {fixtures}")
