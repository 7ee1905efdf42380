package shop;

public class Report {
    private int total;

    public int deep(int[][] grid, int limit) {
        int hits = 0;
        for (int[] row : grid) {
            for (int v : row) {
                if (v > limit) {
                    while (v > 0) {
                        v--;
                        hits++;
                    }
                }
            }
        }
        return hits;
    }

    public String render(String a, String b, String c, String d, String e) {
        return a + b + c + d + e;
    }

    public int grow(int by) {
        total += by;
        return total;
    }
}
