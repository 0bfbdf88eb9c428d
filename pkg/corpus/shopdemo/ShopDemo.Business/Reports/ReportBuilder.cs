using System;

namespace ShopDemo.Business.Reports
{
    public class ReportBuilder
    {
        public ReportBuilder AddHeader(string title)
        {
            return this;
        }

        public ReportBuilder AddTotals(int orders, int users)
        {
            return this;
        }

        public string Render()
        {
            return "report";
        }
    }
}
