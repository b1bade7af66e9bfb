/** Tabbed elicitation view: one grid per matrix for the selected expert. */

import type { ApiClient } from "./api.js";
import { MatrixGridViewModel } from "./matrixGrid.js";
import type { SessionDoc } from "./types.js";

export class SessionView {
  readonly grids: Map<string, MatrixGridViewModel> = new Map();
  activeMatrixId: string;

  constructor(
    client: ApiClient,
    session: SessionDoc,
    readonly expertId: string,
    freeEntry = false,
  ) {
    const matrices = session.matrices[expertId];
    if (!matrices) throw new Error(`unknown expert ${expertId}`);
    const labelsFor = (matrixId: string): string[] => {
      if (matrixId === "criteria") return session.hierarchy.criteria.map((c) => c.name);
      const criterion = session.hierarchy.criteria.find((c) => c.id === matrixId);
      return criterion ? criterion.indicators.map((ind) => ind.name) : [];
    };
    // criteria tab first, then each multi-indicator criterion in hierarchy order
    const order = [
      "criteria",
      ...session.hierarchy.criteria.map((c) => c.id).filter((id) => id in matrices),
    ];
    for (const matrixId of order) {
      this.grids.set(
        matrixId,
        new MatrixGridViewModel(
          client,
          session.session_id,
          expertId,
          matrixId,
          matrices[matrixId]!,
          labelsFor(matrixId),
          session.version,
          { freeEntry, autoReciprocal: session.auto_reciprocal },
        ),
      );
    }
    this.activeMatrixId = "criteria";
  }

  get tabIds(): string[] {
    return [...this.grids.keys()];
  }

  render(container: HTMLElement): void {
    const nav = document.createElement("nav");
    nav.className = "tabs";
    const panel = document.createElement("div");
    panel.className = "tab-panel";
    for (const matrixId of this.tabIds) {
      const button = document.createElement("button");
      button.textContent = matrixId;
      button.dataset.tab = matrixId;
      button.addEventListener("click", () => {
        this.activeMatrixId = matrixId;
        this.grids.get(matrixId)!.render(panel);
        for (const b of nav.querySelectorAll("button")) {
          b.classList.toggle("active", b.dataset.tab === matrixId);
        }
      });
      nav.appendChild(button);
    }
    container.replaceChildren(nav, panel);
    this.grids.get(this.activeMatrixId)!.render(panel);
  }
}
