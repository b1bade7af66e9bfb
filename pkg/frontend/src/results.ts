/** Ranked score chart with uncertainty whiskers and contribution drill-down.
 *
 * The view is a pure projection of the results document: every displayed
 * score, sigma and contribution is the document value verbatim (rendered
 * with String()), so the UI can never disagree with the service.
 */

import type { ResultsDoc, ScoreEntry } from "./types.js";

export class ResultsView {
  private expanded: Set<string> = new Set();
  private container: HTMLElement | null = null;
  private doc: ResultsDoc | null = null;

  render(container: HTMLElement, doc: ResultsDoc | null): void {
    this.container = container;
    this.doc = doc;
    this.renderInto();
  }

  toggleDrilldown(projectId: string): void {
    if (this.expanded.has(projectId)) this.expanded.delete(projectId);
    else this.expanded.add(projectId);
    this.renderInto();
  }

  private renderInto(): void {
    if (!this.container) return;
    if (!this.doc) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No results yet — finalize the session to score the cohort.";
      this.container.replaceChildren(empty);
      return;
    }
    const list = document.createElement("ol");
    list.className = "score-chart";
    for (const entry of this.doc.scores) {
      list.appendChild(this.buildRow(entry));
    }
    this.container.replaceChildren(list, this.buildFooter());
  }

  private buildRow(entry: ScoreEntry): HTMLLIElement {
    const li = document.createElement("li");
    li.dataset.project = entry.project_id;

    const label = document.createElement("span");
    label.className = "project-label";
    label.textContent = entry.project_id;

    const bar = document.createElement("div");
    bar.className = "bar";
    bar.style.width = `${entry.score * 100}%`;

    const whisker = document.createElement("div");
    whisker.className = "whisker";
    whisker.style.width = `${entry.sigma * 2 * 100}%`;
    whisker.dataset.sigma = String(entry.sigma);

    const text = document.createElement("span");
    text.className = "score-text";
    text.dataset.score = String(entry.score);
    text.textContent = `${String(entry.score)} ± ${String(entry.sigma)}`;

    const toggle = document.createElement("button");
    toggle.className = "drilldown-toggle";
    toggle.textContent = "details";
    toggle.addEventListener("click", () => this.toggleDrilldown(entry.project_id));

    li.append(label, bar, whisker, text, toggle);
    if (this.expanded.has(entry.project_id)) {
      li.appendChild(this.buildDrilldown(entry));
    }
    return li;
  }

  private buildDrilldown(entry: ScoreEntry): HTMLTableElement {
    const table = document.createElement("table");
    table.className = "drilldown";
    const cell = (row: HTMLTableRowElement, text: string): HTMLTableCellElement => {
      const td = document.createElement("td");
      td.textContent = text;
      row.appendChild(td);
      return td;
    };
    const thead = document.createElement("thead");
    const head = document.createElement("tr");
    for (const title of ["indicator", "weight", "normalized value", "contribution"]) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }
    thead.appendChild(head);
    const tbody = document.createElement("tbody");
    for (const c of entry.contributions) {
      const row = document.createElement("tr");
      cell(row, c.indicator_id);
      cell(row, String(c.weight));
      cell(row, String(c.value));
      cell(row, String(c.product)).dataset.product = String(c.product);
      tbody.appendChild(row);
    }
    const tfoot = document.createElement("tfoot");
    const foot = document.createElement("tr");
    cell(foot, "total");
    cell(foot, "");
    cell(foot, "");
    const total = cell(
      foot,
      String(entry.contributions.reduce((acc, c) => acc + c.product, 0)),
    );
    total.dataset.role = "contribution-total";
    tfoot.appendChild(foot);
    table.append(thead, tbody, tfoot);
    return table;
  }

  private buildFooter(): HTMLElement {
    const footer = document.createElement("footer");
    const rejected = Object.keys(this.doc?.rejected ?? {});
    if (rejected.length > 0) {
      const p = document.createElement("p");
      p.className = "rejected-note";
      p.textContent = `Not scored (missing measurements): ${rejected.join(", ")}`;
      footer.appendChild(p);
    }
    for (const warning of this.doc?.warnings ?? []) {
      const p = document.createElement("p");
      p.className = "warning";
      p.textContent = warning;
      footer.appendChild(p);
    }
    return footer;
  }
}
